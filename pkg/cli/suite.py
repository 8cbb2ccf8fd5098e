"""
CLI suite module: run scenario files and the built-in verification batches
"""
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer

from checks import CheckExecutor, SuiteConfig, all_passed, load_suite, parse_suite, write_report
from core.config import get_settings
from core.errors import ConfigError
from fields import FieldND, catalog
from pairing import BoxSet

logger = logging.getLogger(__name__)

DEFAULT_REPORT = "report.csv"

app = typer.Typer(help="Run the built-in verification batches")

UNIT_SQUARE = {"boxes": [{"lo": [0, 0], "hi": [1, 1]}]}
BOX_SETS = [
    UNIT_SQUARE,
    {"boxes": [{"lo": [-1, -1], "hi": [1, 0]}]},
    {"boxes": [{"lo": [-0.5, 0.25], "hi": [0.75, 1.5]}]},
    {"boxes": [{"lo": [-1, 0], "hi": [0, 1]}, {"lo": [0, 0], "hi": [1, 1]}]},
    {"boxes": [{"lo": [0, 0], "hi": [1, 0.5]}, {"lo": [0, 0.5], "hi": [0.5, 1]}]},
    # inside (−1, 1)²
    {"boxes": [{"lo": [-0.5, -0.5], "hi": [0.5, 0.25]}]},
    {"boxes": [{"lo": [-0.75, 0], "hi": [0.25, 0.75]}]},
    {"boxes": [{"lo": [-0.75, -0.75], "hi": [0, 0]}, {"lo": [0, -0.75], "hi": [0.5, 0.75]}]},
]
IDENTITY_FIELDS = [
    {"name": "constant"},
    {"name": "constant", "params": {"direction": [0.6, -0.8]}},
    {"name": "heaviside"},
    {"name": "heaviside", "params": {"offset": 0.5}},
    {"name": "radial"},
    {"name": "transversal"},
    {"name": "staircase"},
    {"name": "measure_components"},
]
LAMBDA_VALUES = (0.0, 0.25, 0.5, 1.0)


def _at_origin(value: float, dimension: int) -> Dict[str, Any]:
    return {"overrides": [{"point": [0] * dimension, "value": value}], "default": 0}


def execute_suite(
    suite: SuiteConfig,
    jobs: Optional[int] = None,
    tol_scale: float = 1.0,
    output: Optional[str] = None,
    fail_fast: bool = False,
) -> int:
    """
    Run a suite, write its CSV report and return the exit code

    Returns:
        0 if no row failed, 1 otherwise
    """
    settings = get_settings()
    executor = CheckExecutor(settings, tol_scale=tol_scale)
    results = executor.run_suite(suite.scenarios, jobs or settings.jobs, fail_fast)
    rows = [result.to_row() for result in results]
    path = write_report(rows, output or suite.output or DEFAULT_REPORT)

    counts = {verdict: sum(row.verdict == verdict for row in rows) for verdict in ("pass", "flagged", "fail")}
    typer.echo(
        f"{suite.name}: {len(suite.scenarios)} scenario(s), {len(rows)} check(s): "
        f"{counts['pass']} passed, {counts['flagged']} flagged, {counts['fail']} failed"
    )
    for row in rows:
        if row.verdict == "fail":
            typer.echo(f"  FAIL {row.scenario}/{row.check}: residual {row.residual:.3g} > {row.tolerance:.3g} {row.detail}")
    typer.echo(f"Report written to {path}")
    return 0 if all_passed(rows) else 1


def _finish(suite: SuiteConfig, jobs, tol_scale, output, fail_fast) -> None:
    code = execute_suite(suite, jobs, tol_scale, output, fail_fast)
    if code:
        raise typer.Exit(code)


def run(
    config: Path = typer.Argument(..., help="Scenario file (JSON)"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Scenarios run concurrently"),
    tol_scale: float = typer.Option(1.0, "--tol-scale", help="Multiply every tolerance"),
    output: Optional[str] = typer.Option(None, "--output", "-o", help="CSV report path"),
    fail_fast: bool = typer.Option(False, "--fail-fast", help="Stop starting scenarios after a failure"),
):
    """Run every scenario of a config file and write a CSV report"""
    try:
        suite = load_suite(config)
    except ConfigError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    _finish(suite, jobs, tol_scale, output, fail_fast)


def gauss_green_suite() -> SuiteConfig:
    """Radial atoms and Gauss–Green residuals for N = 2, 3 and λ(0) ∈ {0, 1/4, 1/2, 1}"""
    scenarios: List[Dict[str, Any]] = []
    for n in (2, 3):
        for value in LAMBDA_VALUES:
            scenarios.append(
                {
                    "id": f"radial-{n}d-l{value:g}",
                    "field": {"name": "radial", "params": {"dimension": n}},
                    "set": {"boxes": [{"lo": [0] * n, "hi": [1] * n}]},
                    "lambda": _at_origin(value, n),
                    "checks": ["radial-atom", "gauss-green"],
                }
            )
    for mode in ("interior", "exterior"):
        scenarios.append(
            {
                "id": f"radial-2d-{mode}",
                "field": {"name": "radial"},
                "set": UNIT_SQUARE,
                "checks": ["gauss-green"],
                "params": {"mode": mode},
            }
        )
    scenarios.append(
        {
            "id": "staircase-half-box",
            "field": {"name": "staircase"},
            "set": {"boxes": [{"lo": [0, 0], "hi": [1, 0.5]}]},
            "checks": ["gauss-green"],
        }
    )
    for depth in (5, 10, 20):
        scenarios.append(
            {"id": f"staircase-k{depth:02d}", "field": {"name": "staircase"}, "checks": ["staircase"], "params": {"depth": depth}}
        )
    return parse_suite({"name": "gauss-green", "scenarios": scenarios})


def identity_checks(field_: FieldND) -> List[str]:
    """The identity battery a field supports: λ-difference needs |A| ≪ L^N, the ac bound needs ‖A‖_∞ < ∞"""
    checks = ["complement", "convex-combination", "boundary-divergence"]
    if field_.summable:
        checks.append("lambda-difference")
    if field_.essential_sup is not None and math.isfinite(field_.essential_sup):
        checks.append("ac-bound")
    return checks


def identities_suite() -> SuiteConfig:
    """The identity battery over catalog fields × the box sets inside each window"""
    scenarios = []
    for f, field_spec in enumerate(IDENTITY_FIELDS):
        field_ = catalog(field_spec["name"], field_spec.get("params"))
        checks = identity_checks(field_)
        for s, set_spec in enumerate(BOX_SETS):
            E = BoxSet.from_dict({**set_spec, "dimension": field_.dimension})
            if not E.is_compactly_inside(*field_.window):
                continue
            for t in (0.3, 0.7):
                scenarios.append(
                    {
                        "id": f"f{f}-{field_.name}-s{s}-l{t:g}",
                        "field": field_spec,
                        "set": set_spec,
                        "lambda": {"default": t},
                        "checks": checks,
                        "params": {"t": t},
                    }
                )
    return parse_suite({"name": "identities", "scenarios": scenarios})


def coarea_suite(count: int = 20) -> SuiteConfig:
    """Seeded random coarea equalities and the hypothesis-violation case"""
    return parse_suite(
        {
            "name": "coarea",
            "scenarios": [
                {"id": "random", "checks": ["coarea"], "params": {"count": count}},
                {"id": "atom-at-jump-level", "checks": ["coarea-hypothesis"]},
            ],
        }
    )


def additivity_suite() -> SuiteConfig:
    """Defects on a shared heaviside face and at the radial corner"""
    scenarios = []
    for t in (0.0, 0.3, 0.5, 1.0):
        scenarios.append(
            {
                "id": f"heaviside-face-l{t:g}",
                "field": {"name": "heaviside"},
                "set": {"boxes": [{"lo": [-1, 0], "hi": [0, 1]}]},
                "other": UNIT_SQUARE,
                "lambda": {"default": t},
                "checks": ["additivity"],
                "params": {"expected": {"parts": [{"lo": [0, 0], "hi": [0, 1], "density": -(1.0 - 2.0 * t)}]}},
            }
        )
    for value in (0.0, 0.25, 0.75):
        scenarios.append(
            {
                "id": f"radial-corner-l{value:g}",
                "field": {"name": "radial"},
                "set": UNIT_SQUARE,
                "other": {"boxes": [{"lo": [-1, -1], "hi": [0, 0]}]},
                "lambda": _at_origin(value, 2),
                "checks": ["additivity"],
                "params": {"expected": {"atoms": [{"point": [0, 0], "weight": value}]}},
            }
        )
    return parse_suite({"name": "additivity", "scenarios": scenarios})


BATCHES = {
    "gauss-green": gauss_green_suite,
    "identities": identities_suite,
    "coarea": coarea_suite,
    "additivity": additivity_suite,
}


def _verify(name: str, jobs, tol_scale, output, fail_fast) -> None:
    suite = BATCHES[name]()
    _finish(suite, jobs, tol_scale, output or f"{name}.csv", fail_fast)


@app.command("gauss-green")
def gauss_green(
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j"),
    tol_scale: float = typer.Option(1.0, "--tol-scale"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    fail_fast: bool = typer.Option(False, "--fail-fast"),
):
    """Radial pairing atoms, Gauss–Green residuals and the staircase"""
    _verify("gauss-green", jobs, tol_scale, output, fail_fast)


@app.command()
def identities(
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j"),
    tol_scale: float = typer.Option(1.0, "--tol-scale"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    fail_fast: bool = typer.Option(False, "--fail-fast"),
):
    """The identity battery over catalog fields and box sets"""
    _verify("identities", jobs, tol_scale, output, fail_fast)


@app.command()
def coarea(
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j"),
    tol_scale: float = typer.Option(1.0, "--tol-scale"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    fail_fast: bool = typer.Option(False, "--fail-fast"),
):
    """Coarea equalities on random scenarios and hypothesis detection"""
    _verify("coarea", jobs, tol_scale, output, fail_fast)


@app.command()
def additivity(
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j"),
    tol_scale: float = typer.Option(1.0, "--tol-scale"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    fail_fast: bool = typer.Option(False, "--fail-fast"),
):
    """Additivity defects of the pairing in the set variable"""
    _verify("additivity", jobs, tol_scale, output, fail_fast)
