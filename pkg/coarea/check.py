"""
Coarea formula for λ-pairings:

    ⟨(A, Du)_λ, φ⟩ = ∫ ⟨(A, Dχ_{u>t})_λ, φ⟩ dt

checked exactly for piecewise functions on the line and for step functions
on boxes. The t-integral is split at the levels where the combinatorics of
{u > t} change, so each band integrates a smooth function of t.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from bv.engine import derivative, pairing_1d
from core.config import Settings, get_settings
from core.errors import BadParams, HypothesisFailed
from core.quadrature import BoxIntegrator, quad1d
from fields.field import FieldND
from fields.profiles import BumpProfile, Profile
from fields.testfunc import TestFunction
from measures.functions import PiecewiseFunction1D
from measures.measure1d import Measure1D, total_variation
from measures.pieces import Poly
from measures.selector import LambdaSelector
from measures.sets import BorelSet1D, Interval1D
from pairing.apply import pairing_apply
from pairing.boxes import StepFunctionND

from .levelsets import exceptional_points_nd, exceptional_set, set_sides, superlevel_set

logger = logging.getLogger(__name__)


class CoareaReport(BaseModel):
    """Both sides of the coarea formula for one test function."""

    lhs: float = Field(..., description="⟨(A, Du)_λ, φ⟩")
    rhs: float = Field(..., description="∫ ⟨(A, Dχ_{u>t})_λ, φ⟩ dt")
    residual: float = Field(..., description="|lhs − rhs|")
    levels: List[float] = Field(default_factory=list, description="Band edges of the t-integration")
    exceptional_levels: List[float] = Field(
        default_factory=list, description="Levels where |A|(N_t) + |div A|(N_t) > 0"
    )


class CoareaInequality(BaseModel):
    """|(A, Du)_λ|(W) against ∫ |(A, Dχ_{u>t})_λ|(W) dt on a window W."""

    lo: float
    hi: float
    lhs: float
    rhs: float
    strict: bool = Field(..., description="rhs exceeds lhs beyond the tolerance")

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs or self.lhs - self.rhs <= 1e-8 * max(1.0, abs(self.rhs))


def _check_test_function(domain: Interval1D, phi: Profile) -> None:
    lo, hi = phi.support()
    if not (domain.lo < lo and hi < domain.hi):
        raise BadParams(f"test function support ({lo}, {hi}) is not compactly inside {domain}")


def _check_bounded(u: PiecewiseFunction1D) -> None:
    for sub, piece in zip(u.intervals(), u.pieces):
        for end, side in ((sub.lo, +1), (sub.hi, -1)):
            if not math.isfinite(piece.limit(end, side)):
                raise BadParams(f"u is unbounded near {end}; the coarea check needs bounded u")


def check_integrability(A: PiecewiseFunction1D, u: PiecewiseFunction1D, lam: LambdaSelector) -> None:
    """
    λu⁺ and (1 − λ)u⁻ must be finite at the atoms of DA.

    Raises:
        HypothesisFailed: At the first atom where one of them is infinite
    """
    for x, w in derivative(A).atoms:
        left, right = u.limits(x)
        lower, upper = min(left, right), max(left, right)
        weight = float(lam.value(x))
        if (weight > 0 and math.isinf(upper)) or (weight < 1 and math.isinf(lower)):
            raise HypothesisFailed(
                math.inf, abs(float(w)), f"λu⁺ or (1 − λ)u⁻ is infinite at the atom x={x}"
            )


def exceptional_mass(A: PiecewiseFunction1D, u: PiecewiseFunction1D, t: float) -> float:
    """|A|(N_t) + |DA|(N_t); the first term vanishes since N_t is finite and A is a function."""
    dA = derivative(A)
    return sum(abs(float(dA.atom_weight(x))) for x in exceptional_set(u, t))


def slice_measure(
    A: PiecewiseFunction1D, u: PiecewiseFunction1D, lam: LambdaSelector, t: float
) -> Measure1D:
    """
    (A, Dχ_{u>t})_λ. Inside {u > t} the absolutely continuous parts of
    D(χA) and χ^λ DA cancel, so the measure is a finite sum of atoms at the
    boundary points of {u > t} and at the jumps of A.
    """
    E = superlevel_set(u, t)
    candidates = {float(b) for b in A.breakpoints}
    for interval in E.intervals:
        candidates.update(float(c) for c in (interval.lo, interval.hi) if A.domain.contains(c))
    atoms = []
    for x in sorted(candidates):
        left_in, right_in = set_sides(E, x)
        a_left, a_right = (float(v) for v in A.limits(x))
        if left_in == right_in and a_left == a_right:
            continue
        weight = float(lam.value(x))
        chi = (1.0 - weight) * min(left_in, right_in) + weight * max(left_in, right_in)
        atoms.append((x, right_in * a_right - left_in * a_left - chi * (a_right - a_left)))
    return Measure1D.build(A.domain, atoms)


def slice_value(
    A: PiecewiseFunction1D, u: PiecewiseFunction1D, lam: LambdaSelector, phi: Profile, t: float
) -> float:
    """⟨(A, Dχ_{u>t})_λ, φ⟩."""
    return sum(phi.value(x) * float(w) for x, w in slice_measure(A, u, lam, t).atoms)


def coarea_levels(A: PiecewiseFunction1D, u: PiecewiseFunction1D) -> List[float]:
    """Critical levels of u together with the values u takes at the jumps of A."""
    levels = set(u.critical_levels())
    for b in A.breakpoints:
        levels.update(float(v) for v in u.limits(b) if math.isfinite(v))
    return sorted(levels)


def integrate_profile(phi: Profile, mu: Measure1D, settings: Optional[Settings] = None) -> float:
    """∫ φ dμ, splitting the quadrature at the breakpoints of φ."""
    total = sum(phi.value(float(x)) * float(w) for x, w in mu.atoms)
    for interval, piece in mu.density:
        points = tuple(phi.breakpoints()) + tuple(piece.singular_points())
        total += quad1d(
            lambda x, p=piece: phi.value(x) * float(p.value(x)),
            float(interval.lo),
            float(interval.hi),
            points=points,
            settings=settings,
        )
    return total


def _check_levels(
    A: PiecewiseFunction1D, u: PiecewiseFunction1D, levels: Sequence[float], strict: bool
) -> List[float]:
    flagged = []
    for t in levels:
        m = exceptional_mass(A, u, t)
        if m == 0.0:
            continue
        if strict:
            raise HypothesisFailed(t, m, f"N_t = {exceptional_set(u, t)} carries |DA| mass")
        logger.warning(f"coarea: |DA|(N_t) = {m:.6g} at the isolated level t={t:.12g}")
        flagged.append(t)
    return flagged


def coarea_check(
    A: PiecewiseFunction1D,
    u: PiecewiseFunction1D,
    lam: LambdaSelector,
    phi: Profile,
    strict: bool = True,
    settings: Optional[Settings] = None,
) -> CoareaReport:
    """
    Check the coarea formula on the line.

    The left side integrates φ against the exact pairing; the right side
    integrates the slice values band by band between consecutive levels.
    N_t can only be non-empty at the finitely many critical levels, which
    are enumerated; with strict=False such levels are reported and skipped,
    being a null set of t.

    Raises:
        HypothesisFailed: If N_t carries |DA| mass (strict mode) or λu⁺, (1 − λ)u⁻ are infinite at an atom
        BadParams: If u is unbounded or supp φ is not compactly inside the domain
    """
    settings = settings or get_settings()
    _check_test_function(A.domain, phi)
    check_integrability(A, u, lam)
    _check_bounded(u)

    levels = coarea_levels(A, u)
    flagged = _check_levels(A, u, levels, strict)

    lhs = integrate_profile(phi, pairing_1d(A, u, lam).pairing, settings)
    # levels at which a crossing point meets a kink of φ
    kinks = [float(v) for p in phi.breakpoints() if A.domain.contains(p) for v in u.limits(p)]
    rhs = 0.0
    for a, b in zip(levels, levels[1:]):
        rhs += quad1d(lambda t: slice_value(A, u, lam, phi, t), a, b, points=kinks, settings=settings)
    logger.debug(f"coarea: {len(levels)} levels, lhs {lhs:.12g}, rhs {rhs:.12g}")
    return CoareaReport(
        lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), levels=levels, exceptional_levels=flagged
    )


def coarea_inequality(
    A: PiecewiseFunction1D,
    u: PiecewiseFunction1D,
    lam: LambdaSelector,
    windows: Sequence[Tuple[float, float]],
    settings: Optional[Settings] = None,
    tol: float = 1e-8,
) -> List[CoareaInequality]:
    """
    |(A, Du)_λ|(W) ≤ ∫ |(A, Dχ_{u>t})_λ|(W) dt on each window W = (lo, hi).

    Strict cases are recorded, not interpreted.
    """
    settings = settings or get_settings()
    _check_bounded(u)
    pairing = pairing_1d(A, u, lam).pairing
    rows = []
    for lo, hi in windows:
        W = BorelSet1D.interval(lo, hi)
        levels = set(coarea_levels(A, u))
        for end in (lo, hi):
            levels.update(float(v) for v in u.limits(end) if math.isfinite(v))
        levels = sorted(levels)
        lhs = total_variation(pairing, W)
        rhs = sum(
            quad1d(lambda t: total_variation(slice_measure(A, u, lam, t), W), a, b, settings=settings)
            for a, b in zip(levels, levels[1:])
        )
        strict = rhs - lhs > tol * max(1.0, abs(rhs))
        if strict:
            logger.info(f"coarea inequality is strict on ({lo}, {hi}): {lhs:.12g} < {rhs:.12g}")
        rows.append(CoareaInequality(lo=lo, hi=hi, lhs=lhs, rhs=rhs, strict=strict))
    return rows


def coarea_check_nd(
    field: FieldND,
    u: StepFunctionND,
    lam: LambdaSelector,
    phi: TestFunction,
    strict: bool = True,
    integrator: Optional[BoxIntegrator] = None,
) -> CoareaReport:
    """
    The coarea formula for a step function on boxes. {u > t} is constant
    between consecutive values of u, so the t-integral is a finite sum.

    (6.2) is checked on every band: N_t can only meet the atoms of div A
    among the points carrying mass, and a band of positive length where it
    does is a genuine failure.

    Raises:
        HypothesisFailed: If some band has |div A|(N_t) > 0 (strict mode)
    """
    integrator = integrator or BoxIntegrator()
    window = field.window
    levels = u.levels(window)
    atoms = [(point, weight) for point, weight in field.divergence.atoms]

    flagged = []
    rhs = 0.0
    for a, b in zip(levels, levels[1:]):
        t = (a + b) / 2.0
        points = exceptional_points_nd(u, t, [p for p, _ in atoms], window)
        m = sum(abs(w) for p, w in atoms if tuple(float(c) for c in p) in points)
        if m > 0.0:
            if strict:
                raise HypothesisFailed(t, m, f"N_t ⊇ {points} for every t in [{a}, {b})")
            logger.warning(f"coarea: |div A|(N_t) = {m:.6g} for t in [{a}, {b})")
            flagged.append(a)
        rhs += (b - a) * pairing_apply(field, u.superlevel(t, window), lam, phi, integrator)
    lhs = pairing_apply(field, u, lam, phi, integrator)
    return CoareaReport(
        lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), levels=levels, exceptional_levels=flagged
    )


@dataclass(frozen=True)
class CoareaScenario:
    A: PiecewiseFunction1D
    u: PiecewiseFunction1D
    lam: LambdaSelector
    phi: Profile


def random_piecewise_linear(
    rng: np.random.Generator, domain: Interval1D, pieces: int, continuous: bool
) -> PiecewiseFunction1D:
    """
    A random piecewise linear function with rational breakpoints and values,
    so continuity at the breakpoints is exact.
    """
    lo, hi = Fraction(domain.lo), Fraction(domain.hi)
    inner = sorted(int(k) for k in rng.choice(np.arange(1, 20), size=pieces - 1, replace=False))
    cuts = [lo] + [lo + Fraction(k, 20) * (hi - lo) for k in inner] + [hi]

    def level() -> Fraction:
        return Fraction(int(rng.integers(-100, 101)), 100)

    values = [level() for _ in cuts]
    parts = []
    for k, (a, b) in enumerate(zip(cuts, cuts[1:])):
        start, end = (values[k], values[k + 1]) if continuous else (level(), level())
        slope = (end - start) / (b - a)
        parts.append((a, b, Poly.linear(slope, start - slope * a)))
    return PiecewiseFunction1D.from_parts(domain, parts)


def random_coarea_scenario(rng: np.random.Generator, domain: Optional[Interval1D] = None) -> CoareaScenario:
    """
    Bounded piecewise linear u (jumps allowed) against a continuous piecewise
    linear A, so that |DA| ≪ L¹ and the formula holds with equality.
    """
    domain = domain or Interval1D(0.0, 1.0)
    u = random_piecewise_linear(rng, domain, int(rng.integers(2, 5)), continuous=False)
    A = random_piecewise_linear(rng, domain, int(rng.integers(2, 5)), continuous=True)
    lam = LambdaSelector.constant(float(rng.uniform()))
    centre = domain.midpoint
    phi = BumpProfile(centre, 0.45 * domain.length, 1.0, 3)
    return CoareaScenario(A, u, lam, phi)
