"""
Built-in checks. Each reads what it needs from a scenario and returns both
sides of an identity (or a bound) for the report.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from bv.engine import compact_support_identity, gauss_green_1d, integration_by_parts_1d, pairing_1d
from coarea import coarea_check, coarea_check_nd, random_coarea_scenario
from core.config import get_settings
from core.errors import BadParams, HypothesisFailed
from core.quadrature import BoxIntegrator
from fields import FieldND, MeasureND, bump, distance, divergence_selftest, mass, random_test_functions
from fields.profiles import BumpProfile, profile_from_dict
from measures import BorelSet1D, Interval1D, LambdaSelector, PiecewiseFunction1D, Poly
from pairing import (
    BoxSet,
    SmoothScalar,
    StepFunctionND,
    ac_bound_check,
    additivity_defect,
    boundary_divergence_check,
    complement_check,
    consistency_check,
    convex_combination_check,
    gauss_green_check,
    lambda_difference_check,
    not_measure_probe,
    pairing_measure_box,
    perimeter_estimate,
    sobolev_check,
    staircase_check,
)
from pairing.probes import DEFAULT_SIZES, SLOPE_THRESHOLD
from tvmin import EnergyParams, GridFunction, arctan_family, compactness_failure_demo, coordinate_descent, lsc_harness, minimize

from .identity import IDENTITY_TOLERANCES, identity_integral
from .registry import CheckOutcome, register_check
from .scenario import Scenario

logger = logging.getLogger(__name__)

ARCTAN_INDICES = (10, 100, 1e3, 1e4, 1e5, 1e6)


def _rng(scenario: Scenario) -> np.random.Generator:
    return np.random.default_rng(get_settings().seed + int(scenario.params.get("seed", 0)))


def _phi(scenario: Scenario, field_: FieldND, E: Optional[BoxSet] = None):
    spec = scenario.params.get("phi")
    if spec is not None:
        return bump(spec["center"], spec["radius"])
    lo, hi = field_.window
    if E is not None and E.is_bounded():
        blo, bhi = E.bounding_box()
        centre = tuple((a + b) / 2.0 for a, b in zip(blo, bhi))
    else:
        centre = tuple((a + b) / 2.0 for a, b in zip(lo, hi))
    room = min(min(c - a, b - c) for c, a, b in zip(centre, lo, hi))
    return bump(centre, 0.9 * room)


def _measure_outcome(identity) -> CheckOutcome:
    return CheckOutcome(lhs=identity.lhs, rhs=identity.rhs, residual=identity.residual)


def _one_dimensional(scenario: Scenario) -> Tuple[PiecewiseFunction1D, PiecewiseFunction1D]:
    data = scenario.function or {}
    if "A" not in data or "u" not in data:
        raise BadParams(f"scenario {scenario.id} needs function.A and function.u")
    return PiecewiseFunction1D.from_dict(data["A"]), PiecewiseFunction1D.from_dict(data["u"])


# ---------------------------------------------------------------- N-D identities


@register_check(tags=["nd", "gauss-green"])
def gauss_green(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """div A(E¹) + ∫_{∂*E} λ d div A = −(A, Dχ_E)_λ(∂⁻E)"""
    result = gauss_green_check(
        scenario.build_field(),
        scenario.build_set(),
        scenario.build_lambda(),
        mode=scenario.params.get("mode", "lambda"),
        integrator=integrator,
    )
    return CheckOutcome.identity(result.lhs, result.rhs)


@register_check(tags=["nd", "atoms"], tolerance=1e-15)
def radial_atom(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Atom of (A, Dχ_E)_λ at the origin against θ_E(0) − λ(0) for the radial field"""
    field_ = scenario.build_field()
    if field_.name != "radial":
        raise BadParams("radial-atom needs the radial field")
    E = scenario.build_set()
    lam = scenario.build_lambda()
    origin = (0.0,) * field_.dimension
    atom = pairing_measure_box(field_, E, lam).atom_weight(origin)
    expected = E.density(origin) - float(lam.value(origin))
    return CheckOutcome.identity(atom, expected)


@register_check(tags=["nd", "identities"])
def complement(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Dχ_E)_λ = −(A, Dχ_{Ω∖E})_{1−λ}"""
    return _measure_outcome(
        complement_check(scenario.build_field(), scenario.build_set(), scenario.build_lambda(), integrator=integrator)
    )


@register_check(tags=["nd", "identities"])
def convex_combination(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Dχ_E)_t = (1 − t)(A, Dχ_E)_0 + t(A, Dχ_E)_1"""
    t = float(scenario.params.get("t", 0.5))
    return _measure_outcome(
        convex_combination_check(scenario.build_field(), scenario.build_set(), t, integrator=integrator)
    )


@register_check(tags=["nd", "identities"])
def lambda_difference(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Dχ_E)_{λ₁} − (A, Dχ_E)_{λ₂} = (λ₂ − λ₁) div A ⌞ ∂*E"""
    lam1 = scenario.build_lambda()
    spec = scenario.params.get("lambda2")
    lam2 = LambdaSelector.from_dict(spec) if spec is not None else lam1.complement()
    return _measure_outcome(
        lambda_difference_check(scenario.build_field(), scenario.build_set(), lam1, lam2, integrator=integrator)
    )


@register_check(tags=["nd", "identities"])
def boundary_divergence(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Dχ_E)_0 − (A, Dχ_E)_1 = div A ⌞ ∂*E"""
    return _measure_outcome(
        boundary_divergence_check(scenario.build_field(), scenario.build_set(), integrator=integrator)
    )


@register_check(tags=["nd", "identities"], tolerance=1e-10)
def additivity(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Dχ_{E∪F})_λ − (A, Dχ_E)_λ − (A, Dχ_F)_λ against an expected defect measure"""
    field_ = scenario.build_field()
    defect = additivity_defect(field_, scenario.build_set(), scenario.build_set("other"), scenario.build_lambda())
    spec = scenario.params.get("expected", {})
    expected = MeasureND.from_dict({"dimension": field_.dimension, **spec})
    return CheckOutcome(
        lhs=mass(defect, integrator=integrator),
        rhs=mass(expected, integrator=integrator),
        residual=distance(defect, expected, integrator),
    )


@register_check(tags=["nd", "identities"], tolerance=1e-9)
def consistency(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """pairing_apply against φ integrated over the explicit pairing measure"""
    field_ = scenario.build_field()
    E = scenario.build_set()
    result = consistency_check(field_, E, scenario.build_lambda(), _phi(scenario, field_, E), integrator)
    return CheckOutcome.identity(result.lhs, result.rhs)


@register_check(tags=["nd", "identities"])
def sobolev(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """⟨(A, Du)_λ, φ⟩ = ∫ φ A·∇u for an affine u"""
    field_ = scenario.build_field()
    gradient = scenario.params.get("gradient", [1.0] * field_.dimension)
    u = SmoothScalar.affine(gradient, float(scenario.params.get("offset", 0.0)))
    result = sobolev_check(field_, u, scenario.build_lambda(), _phi(scenario, field_), integrator)
    return CheckOutcome.identity(result.lhs, result.rhs)


@register_check(tags=["nd", "fields"])
def divergence(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """∫φ d div A + ∫∇φ · dA = 0 on seeded random bumps"""
    field_ = scenario.build_field()
    count = int(scenario.params.get("count", 5))
    residuals = [
        divergence_selftest(field_, phi, integrator)
        for phi in random_test_functions(field_, count, _rng(scenario))
    ]
    return CheckOutcome(lhs=max(residuals), rhs=0.0, residual=max(residuals))


@register_check(tags=["nd", "bounds"], tolerance=1e-10)
def ac_bound(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """P_{A,λ}(E, W) ≤ 2 c_N ‖A‖_∞ H^{N−1}(∂⁻E ∩ W)"""
    bound = ac_bound_check(scenario.build_field(), scenario.build_set(), scenario.build_lambda(), integrator=integrator)
    return CheckOutcome.bound(bound.lhs, bound.rhs)


@register_check(tags=["nd", "perimeter"])
def perimeter(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """P_{A,λ}(E, W), flagged when only a lower bound is computable"""
    result = perimeter_estimate(
        scenario.build_field(), scenario.build_set(), scenario.build_lambda(), integrator=integrator
    )
    expected = scenario.params.get("expected")
    note = "lower bound" if result.lower_bound_only else ""
    if expected is None:
        return CheckOutcome(lhs=result.value, rhs=result.value, residual=0.0, flagged=result.lower_bound_only, detail=note)
    if result.lower_bound_only:
        return CheckOutcome.bound(result.value, float(expected), flagged=True, detail=note)
    return CheckOutcome.identity(result.value, float(expected))


@register_check(tags=["nd", "staircase"])
def staircase(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Gauss–Green on the staircase truncated at depth K, judged against the tail bound"""
    depth = int(scenario.params.get("depth", 5))
    report = staircase_check(scenario.build_field(), depth, scenario.build_lambda(), integrator)
    return CheckOutcome(
        lhs=report.lhs, rhs=report.rhs, residual=report.residual, tolerance=report.tail_bound, detail=f"K={depth}"
    )


@register_check(tags=["nd", "probes"], tolerance=0.5)
def probe(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Growth of ⟨(A, Du)_λ, φ_k⟩ along a probe family against the expected verdict"""
    field_ = scenario.build_field()
    expect = scenario.params.get("expect", "NotMeasure")
    report = not_measure_probe(
        field_,
        u=scenario.build_set() if scenario.set is not None else None,
        lam=scenario.build_lambda() if scenario.lam is not None else None,
        sizes=scenario.params.get("sizes", DEFAULT_SIZES),
        family=scenario.params.get("family"),
        integrator=integrator,
    )
    if report.verdict == "NotMeasure":
        logger.warning(f"{field_.name}: pairings along {report.family} grow, slope {report.slope:.6g}")
    return CheckOutcome(
        lhs=report.slope,
        rhs=SLOPE_THRESHOLD,
        residual=0.0 if report.verdict == expect else 1.0,
        detail=report.verdict,
    )


@register_check(tags=["nd", "coarea"])
def coarea_nd(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Coarea formula for a step function on boxes"""
    field_ = scenario.build_field()
    if "u" in scenario.params:
        u = StepFunctionND.from_dict({"dimension": field_.dimension, **scenario.params["u"]})
    else:
        u = scenario.build_set().indicator()
    report = coarea_check_nd(
        field_,
        u,
        scenario.build_lambda(),
        _phi(scenario, field_),
        strict=bool(scenario.params.get("strict", True)),
        integrator=integrator,
    )
    return CheckOutcome.identity(report.lhs, report.rhs)


# ---------------------------------------------------------------- one dimension


def random_compact_support_case(rng: np.random.Generator, domain: Interval1D):
    """A quadratic u supported in a random (lo, hi) ∋ 0, A with one jump, and a random λ."""
    lo = Fraction(int(rng.integers(-7, 0)), 8)
    hi = Fraction(int(rng.integers(1, 8)), 8)
    u = PiecewiseFunction1D.from_parts(domain, [(lo, hi, Poly(tuple(int(c) for c in rng.integers(-4, 5, size=3))))])
    jump = Fraction(int(rng.integers(-7, 8)), 8)
    A = PiecewiseFunction1D(
        domain,
        (jump,),
        (
            Poly(tuple(int(c) for c in rng.integers(-3, 4, size=2))),
            Poly(tuple(int(c) for c in rng.integers(-3, 4, size=3))),
        ),
    )
    lam = LambdaSelector(
        overrides=((lo, float(rng.random())), (hi, float(rng.random()))),
        default=float(rng.random()),
    )
    return A, u, lam


@register_check(tags=["1d", "identities"], tolerance=1e-12)
def compact_support(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """∫ u^λ dDA = −(A, Du)_λ(Ω) for compactly supported u"""
    if scenario.function is not None:
        A, u = _one_dimensional(scenario)
        cases = [(A, u, scenario.build_lambda())]
    else:
        rng = _rng(scenario)
        domain = Interval1D(-1, 1)
        cases = [random_compact_support_case(rng, domain) for _ in range(int(scenario.params.get("count", 20)))]
    worst = max((compact_support_identity(A, u, lam) for A, u, lam in cases), key=lambda r: r.residual)
    return CheckOutcome.identity(worst.lhs, worst.rhs, detail=f"{len(cases)} case(s)")


@register_check(tags=["1d", "pairing"], tolerance=1e-12)
def leibniz(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """(A, Du)_λ = D(uA) − u^λ DA as measures"""
    A, u = _one_dimensional(scenario)
    defect = pairing_1d(A, u, scenario.build_lambda()).leibniz_defect()
    return CheckOutcome(lhs=defect, rhs=0.0, residual=defect)


def _interval_set(scenario: Scenario) -> BorelSet1D:
    data = (scenario.function or {}).get("E")
    if data is None:
        raise BadParams(f"scenario {scenario.id} needs function.E")
    return BorelSet1D.from_dict(data)


@register_check(name="gauss-green-1d", tags=["1d", "gauss-green"], tolerance=1e-12)
def gauss_green_1d_check(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """DA(E¹) + ∫_{∂*E} λ dDA = −(A, Dχ_E)_λ(∂*E) on the line"""
    A = PiecewiseFunction1D.from_dict((scenario.function or {})["A"])
    result = gauss_green_1d(A, _interval_set(scenario), scenario.build_lambda())
    return CheckOutcome.identity(result.lhs, result.rhs)


@register_check(tags=["1d", "gauss-green"], tolerance=1e-12)
def integration_by_parts(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Integration by parts against χ_E with traces weighted by λ₂"""
    A, u = _one_dimensional(scenario)
    spec = scenario.params.get("lambda2")
    lam2 = LambdaSelector.from_dict(spec) if spec is not None else LambdaSelector.constant(0)
    result = integration_by_parts_1d(A, u, _interval_set(scenario), scenario.build_lambda(), lam2)
    return CheckOutcome.identity(result.lhs, result.rhs)


def _coarea_case(scenario: Scenario):
    A, u = _one_dimensional(scenario)
    phi = profile_from_dict(scenario.params.get("phi", {"kind": "bump", "center": 0.0, "radius": 0.5}))
    return A, u, phi


@register_check(tags=["1d", "coarea"])
def coarea(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """⟨(A, Du)_λ, φ⟩ = ∫ ⟨(A, Dχ_{u>t})_λ, φ⟩ dt"""
    strict = bool(scenario.params.get("strict", True))
    if scenario.function is not None:
        A, u, phi = _coarea_case(scenario)
        reports = [coarea_check(A, u, scenario.build_lambda(), phi, strict=strict, settings=integrator.settings)]
    else:
        rng = _rng(scenario)
        reports = []
        for _ in range(int(scenario.params.get("count", 20))):
            case = random_coarea_scenario(rng)
            reports.append(coarea_check(case.A, case.u, case.lam, case.phi, strict=strict, settings=integrator.settings))
    worst = max(reports, key=lambda r: r.residual)
    flagged = any(r.exceptional_levels for r in reports)
    return CheckOutcome.identity(worst.lhs, worst.rhs, flagged=flagged, detail=f"{len(reports)} case(s)")


def _jump_case() -> Tuple[PiecewiseFunction1D, PiecewiseFunction1D, LambdaSelector]:
    # DA = δ₀ sits at the level t = 1 of the jump of u
    domain = Interval1D(-1, 1)
    A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))
    u = PiecewiseFunction1D(domain, (0,), (Poly((1, 0, 1)), Poly.constant(2)))
    return A, u, LambdaSelector.at_point(0.0, 0.3)


@register_check(tags=["1d", "coarea"], tolerance=1e-12)
def coarea_hypothesis(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """An atom of DA on a level set of u must be detected"""
    if scenario.function is not None:
        A, u, phi = _coarea_case(scenario)
        lam = scenario.build_lambda()
    else:
        A, u, lam = _jump_case()
        phi = BumpProfile(0.0, 0.5, 1.0, 3)
    expected = float(scenario.params.get("mass", 1.0))
    try:
        coarea_check(A, u, lam, phi, strict=True, settings=integrator.settings)
    except HypothesisFailed as exc:
        return CheckOutcome.identity(exc.mass, expected, detail=f"t={exc.t:.17g}")
    return CheckOutcome(lhs=0.0, rhs=expected, residual=math.inf, detail="not detected")


# ---------------------------------------------------------------- sequences and minimization


def _arctan_report(scenario: Scenario):
    a = float(scenario.params.get("a", 0.5))
    b = float(scenario.params.get("b", 1.5))
    family = arctan_family(a, b)
    lam = scenario.build_lambda()
    indices = scenario.params.get("indices", ARCTAN_INDICES)
    return a, b, lam, lsc_harness(family.A, family.build, indices, family.limit, lam)


@register_check(tags=["1d", "sequences"], tolerance=1e-6)
def arctan_masses(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """|(A, Du_k)_λ|(Ω) = a·arctan(k) tends to aπ/2"""
    a, _, _, report = _arctan_report(scenario)
    return CheckOutcome.identity(report.masses[-1], a * math.pi / 2.0, detail=f"k={report.indices[-1]:g}")


@register_check(tags=["1d", "sequences"], tolerance=1e-12)
def arctan_atom(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Mass of the limit pairing against (1 − λ(0))(a + b)π/2"""
    a, b, lam, report = _arctan_report(scenario)
    expected = (1.0 - float(lam.value(0.0))) * (a + b) * math.pi / 2.0
    return CheckOutcome.identity(report.limit_mass, expected)


@register_check(tags=["1d", "sequences"], tolerance=1e-9)
def lsc(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Lower semicontinuity of the pairing mass when the sequence (A, λ)-converges"""
    _, _, _, report = _arctan_report(scenario)
    if report.hypotheses_met:
        return CheckOutcome.bound(report.limit_mass, report.liminf_estimate, detail="hypotheses met")
    return CheckOutcome(
        lhs=report.limit_mass, rhs=report.liminf_estimate, residual=0.0, detail="hypotheses not met"
    )


@register_check(tags=["nd", "sequences"], tolerance=1e-6)
def compactness(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Masses 2^{N−1} k∫₀^{1/k}|f| tend to 2^{N−1}|f(0)| while the pairings vanish"""
    dimension = int(scenario.params.get("dimension", 2))
    profile = scenario.params.get("profile")
    indices = scenario.params.get("indices", [1, 10, 100, 1000, 100000])
    masses = compactness_failure_demo(dimension, profile, indices=indices, check_pairing=False)
    paired = compactness_failure_demo(
        dimension, profile, indices=scenario.params.get("pairing_indices", [1, 2, 4, 8])
    )
    lhs, rhs = masses.masses[-1], masses.limit_mass
    residual = max([abs(lhs - rhs)] + [abs(v) for v in paired.pairing_values])
    return CheckOutcome(lhs=lhs, rhs=rhs, residual=residual, detail=f"N={masses.dimension}")


def _tvmin_instances(scenario: Scenario) -> List[EnergyParams]:
    rng = _rng(scenario)
    shape = tuple(int(s) for s in scenario.params.get("shape", [3]))
    p = float(scenario.params.get("p", 2.0))
    trials = int(scenario.params.get("trials", 5))
    h = 1.0 / shape[0]
    out = []
    for _ in range(trials):
        values = rng.normal(size=shape)
        if scenario.field is not None:
            field_ = scenario.build_field()
            lo, hi = field_.window
            g = GridFunction.on_window(values, lo, hi)
            out.append(EnergyParams.from_field(field_, g, p=p))
        else:
            g = GridFunction(values, h)
            samples = rng.uniform(-1.0, 1.0, size=shape + (len(shape),))
            out.append(EnergyParams(g, samples, p=p))
    return out


@register_check(tags=["grid", "tvmin"], tolerance=1e-4)
def tvmin(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """Minimizer energy against cyclic coordinate descent, with a monotone trace"""
    worst: Optional[Dict[str, Any]] = None
    for params in _tvmin_instances(scenario):
        result = minimize(params)
        trace = result.trace
        monotone = all(b <= a for a, b in zip(trace, trace[1:]))
        _, oracle = coordinate_descent(params)
        gap = max(0.0, result.energy - oracle) if monotone else math.inf
        if worst is None or gap > worst["gap"]:
            worst = {"gap": gap, "energy": result.energy, "oracle": oracle}
    if worst is None:
        raise BadParams("tvmin needs at least one trial")
    return CheckOutcome(lhs=worst["energy"], rhs=worst["oracle"], residual=worst["gap"])


@register_check(tags=["identities"])
def identity(scenario: Scenario, integrator: BoxIntegrator) -> CheckOutcome:
    """∫_{(0,1)^n} (1 + |y|²)^{−(n+1)/2} dy = ω_{n+1}/2^{n+1}"""
    n = int(scenario.params.get("n", 1))
    result = identity_integral(n, integrator.settings)
    return CheckOutcome(
        lhs=result.value,
        rhs=result.target,
        residual=result.residual,
        tolerance=IDENTITY_TOLERANCES[n],
        detail=f"n={n}",
    )
