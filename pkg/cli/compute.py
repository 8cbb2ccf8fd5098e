"""
CLI compute module: one-off pairings, perimeters and denoising runs
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import typer

from bv.engine import pairing_1d
from checks import Scenario, load_suite
from core.errors import BadParams, BudgetExceeded, ConfigError, PairingCalcError
from fields import catalog
from measures import LambdaSelector, PiecewiseFunction1D
from measures.measure1d import total_variation
from pairing import perimeter_estimate
from tvmin import EnergyParams, GridFunction, load_grid_csv, minimize, save_grid_csv

logger = logging.getLogger(__name__)


def read_json(source: str) -> Any:
    """Inline JSON, or the path of a JSON file"""
    text = source.strip()
    if text[:1] in "{[":
        return json.loads(text)
    return json.loads(Path(source).read_text(encoding="utf-8"))


def pair1d(
    u: str = typer.Argument(..., help="u as JSON (inline or file)"),
    field: str = typer.Argument(..., metavar="A", help="A as JSON (inline or file)"),
    lam: str = typer.Argument(..., help="λ-selector as JSON, or a number for a constant"),
):
    """Print (A, Du)_λ and its Leibniz audit as JSON"""
    try:
        u_fn = PiecewiseFunction1D.from_dict(read_json(u))
        A_fn = PiecewiseFunction1D.from_dict(read_json(field))
        try:
            selector = LambdaSelector.constant(float(lam))
        except ValueError:
            selector = LambdaSelector.from_dict(read_json(lam))
        result = pairing_1d(A_fn, u_fn, selector)
        payload = result.to_dict()
        payload["total_variation"] = total_variation(result.pairing)
        payload["leibniz_defect"] = result.leibniz_defect()
        typer.echo(json.dumps(payload, indent=2, default=str))
    except (OSError, ValueError, KeyError, BadParams) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    except PairingCalcError as e:
        typer.echo(f"Error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(1)


def _scenario(path: Path, scenario_id: Optional[str]) -> Scenario:
    suite = load_suite(path)
    if not suite.scenarios:
        raise ConfigError(f"{path} holds no scenario")
    if scenario_id is None:
        return suite.scenarios[0]
    for scenario in suite.scenarios:
        if scenario.id == scenario_id:
            return scenario
    raise ConfigError(f"no scenario {scenario_id!r} in {path}")


def perimeter(
    scenario: Path = typer.Argument(..., help="Scenario file with a field, a set and λ"),
    scenario_id: Optional[str] = typer.Option(None, "--id", help="Scenario to use (first by default)"),
):
    """Print P_{A,λ}(E, W), marked when it is only a lower bound"""
    try:
        chosen = _scenario(scenario, scenario_id)
        result = perimeter_estimate(chosen.build_field(), chosen.build_set(), chosen.build_lambda())
    except (ConfigError, BadParams) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    except PairingCalcError as e:
        typer.echo(f"Error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(1)
    suffix = f" (lower bound over {result.dictionary_size} test functions)" if result.lower_bound_only else ""
    typer.echo(f"{chosen.id}: P = {result.value:.17g}{suffix}")


def _energy_params(spec: Dict[str, Any], base: Path) -> EnergyParams:
    spacing = float(spec.get("spacing", 1.0))
    g_spec = spec["g"]
    if isinstance(g_spec, str):
        g = load_grid_csv(base / g_spec, spacing)
    else:
        g = GridFunction(np.asarray(g_spec, dtype=float), spacing)
    options = {
        key: spec[key] for key in ("p", "max_iter", "tau", "sigma", "tol", "strict") if key in spec
    }
    if "p" in options:
        options["p"] = float(options["p"])
    if "field" in spec:
        field_ = catalog(spec["field"]["name"], spec["field"].get("params"))
        lo, hi = field_.window
        g = GridFunction.on_window(g.values, lo, hi)
        return EnergyParams.from_field(field_, g, **options)
    if "samples" in spec:
        return EnergyParams(g, np.asarray(spec["samples"], dtype=float), **options)
    return EnergyParams.constant(g, spec.get("direction"), **options)


def denoise(
    params: Path = typer.Argument(..., help="JSON with g (values or CSV path), the field and p"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="CSV path for the minimizer"),
):
    """Minimize |(A, Du)| + ‖u − g‖_{L^p(|A|)} on a grid"""
    try:
        spec = json.loads(params.read_text(encoding="utf-8"))
        energy_params = _energy_params(spec, params.parent)
        result = minimize(energy_params)
    except (OSError, ValueError, KeyError, BadParams) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)
    except BudgetExceeded as e:
        typer.echo(f"Error: iteration budget exhausted at energy {e.energy:.17g} (residual {e.residual:.3g})", err=True)
        raise typer.Exit(1)
    except PairingCalcError as e:
        typer.echo(f"Error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(2)

    typer.echo(f"method: {result.method}")
    typer.echo(f"iterations: {result.iterations}")
    typer.echo(f"converged: {result.converged}")
    typer.echo(f"energy: {result.energy:.17g}")
    if output is not None:
        save_grid_csv(result.u, output)
        typer.echo(f"Minimizer written to {output}")
