"""
Lower semicontinuity of |(A, Du)_λ|(Ω) along sequences, and the failure of
compactness in BV^A for a transversal field.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from bv.engine import distance_l1_A, distance_l1_divA, pairing_1d
from core.errors import BadParams, PairingCalcError
from core.quadrature import quad1d
from fields.catalog import ProfileSpec, transversal
from fields.profiles import ConstantProfile, profile_from_dict
from fields.testfunc import TestFunction, bump
from measures.functions import PiecewiseFunction1D
from measures.measure1d import total_variation
from measures.pieces import Arctan, Poly
from measures.selector import LambdaSelector
from measures.sets import BorelSet1D, Interval1D
from pairing.apply import pairing_apply
from pairing.boxes import BoxSet

logger = logging.getLogger(__name__)


class LscReport(BaseModel):
    """Masses along a sequence against the mass of its limit."""

    indices: List[float] = Field(..., description="Sequence parameters k")
    masses: List[float] = Field(..., description="|(A, Du_k)_λ|(Ω)")
    limit_mass: float = Field(..., description="|(A, Du)_λ|(Ω) of the limit")
    liminf_estimate: float = Field(..., description="liminf of the masses, extrapolated from the tail")
    lsc_holds: bool = Field(..., description="limit_mass ≤ liminf_estimate + tol")
    l1_A_distances: List[float] = Field(..., description="‖u_k − u‖_{L¹(|A|)}")
    l1_divA_distances: List[float] = Field(..., description="‖u_k^λ − u^λ‖_{L¹(|DA|)}")
    hypotheses_met: bool = Field(
        ..., description="Both distances end below the convergence tolerance"
    )

    @property
    def consistent(self) -> bool:
        """(A, λ)-convergence forces lower semicontinuity."""
        return self.lsc_holds or not self.hypotheses_met


@dataclass(frozen=True)
class SequenceFamily:
    """A field, a sequence builder k ↦ u_k and the pointwise limit."""

    A: PiecewiseFunction1D
    build: Callable[[float], PiecewiseFunction1D]
    limit: PiecewiseFunction1D


def arctan_family(a: float, b: float) -> SequenceFamily:
    """
    A = χ_(0,1) on (−1, 1), u_k = a·arctan(kx) for x ≥ 0 and b·arctan(kx) for x < 0.

    (A, Du_k)_λ = ak/(1+k²x²) L¹ ⌞ (0,1) has mass a·arctan(k), while the
    limit carries the single atom (1 − λ(0))(a + b)π/2 at 0.
    """
    if a < 0 or b < 0:
        raise BadParams(f"a and b must be non-negative, got a={a}, b={b}")
    domain = Interval1D(-1, 1)
    A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))

    def build(k: float) -> PiecewiseFunction1D:
        if k <= 0:
            raise BadParams(f"k must be positive, got {k}")
        return PiecewiseFunction1D(domain, (0,), (Arctan(b, k), Arctan(a, k)))

    limit = PiecewiseFunction1D(
        domain, (0,), (Poly.constant(-b * math.pi / 2), Poly.constant(a * math.pi / 2))
    )
    return SequenceFamily(A, build, limit)


def constant_family(u: PiecewiseFunction1D, A: PiecewiseFunction1D) -> SequenceFamily:
    return SequenceFamily(A, lambda k: u, u)


def liminf_estimate(indices: Sequence[float], masses: Sequence[float]) -> float:
    """
    liminf of masses[k] as k → ∞, from the second half of the sequence.

    A monotone tail is taken to approach its limit like L − C/k, and the last
    two terms are Richardson-extrapolated: L ≈ (k₂m₂ − k₁m₁)/(k₂ − k₁). Any
    other tail falls back to its smallest mass.
    """
    if len(indices) != len(masses) or not masses:
        raise BadParams("indices and masses must be non-empty and of equal length")
    half = len(masses) // 2
    ks = np.asarray(indices[half:], dtype=float)
    ms = np.asarray(masses[half:], dtype=float)
    lowest = float(ms.min())
    if ms.size < 2 or np.any(np.diff(ks) <= 0):
        return lowest
    steps = np.diff(ms)
    (k1, k2), (m1, m2) = ks[-2:], ms[-2:]
    extrapolated = float((k2 * m2 - k1 * m1) / (k2 - k1))
    if np.all(steps >= 0):
        return max(extrapolated, float(m2))
    if np.all(steps <= 0):
        return min(extrapolated, float(m2))
    return lowest


def lsc_harness(
    A: PiecewiseFunction1D,
    build: Callable[[float], PiecewiseFunction1D],
    indices: Sequence[float],
    limit: PiecewiseFunction1D,
    lam: LambdaSelector,
    tol: float = 1e-9,
    convergence_tol: float = 1e-2,
) -> LscReport:
    """
    Compare |(A, Du_k)_λ|(Ω) along k ∈ indices with |(A, Du)_λ|(Ω).

    The liminf is extrapolated from the tail of the sequence (see
    liminf_estimate); the convergence hypotheses are judged by the last distances.

    Raises:
        BadParams: If no indices are given
        NotIntegrable: If a member or the limit is not in X^{A,λ}
    """
    if not indices:
        raise BadParams("the sequence needs at least one index")
    masses, l1_A, l1_divA = [], [], []
    for k in indices:
        u_k = build(k)
        masses.append(total_variation(pairing_1d(A, u_k, lam).pairing))
        l1_A.append(distance_l1_A(u_k, limit, A))
        l1_divA.append(distance_l1_divA(u_k, limit, A, lam))
        logger.debug(f"lsc_harness: k={k} mass={masses[-1]:.12g}")
    limit_mass = total_variation(pairing_1d(A, limit, lam).pairing)
    liminf = liminf_estimate(indices, masses)
    report = LscReport(
        indices=[float(k) for k in indices],
        masses=masses,
        limit_mass=limit_mass,
        liminf_estimate=liminf,
        lsc_holds=limit_mass <= liminf + tol,
        l1_A_distances=l1_A,
        l1_divA_distances=l1_divA,
        hypotheses_met=l1_A[-1] <= convergence_tol and l1_divA[-1] <= convergence_tol,
    )
    if not report.consistent:
        logger.warning(
            f"lower semicontinuity fails under (A, λ)-convergence: "
            f"{limit_mass:.12g} > {liminf:.12g}"
        )
    return report


class CompactnessReport(BaseModel):
    """u_k = k·χ_{(−1,1)^{N−1}×(0,1/k)} against A = (f(x_N), 0, …, 0)."""

    dimension: int
    indices: List[int]
    masses: List[float] = Field(..., description="‖u_k‖_{L¹(|A|)} = 2^{N−1} k ∫_0^{1/k} |f|")
    limit_mass: float = Field(..., description="2^{N−1}|f(0)|")
    pairing_values: List[float] = Field(
        default_factory=list, description="⟨(A, Du_k), φ⟩ for one test function"
    )
    seminorm_bound: float = Field(..., description="sup_k of ‖u_k‖_{L¹(|A|)} + |(A, Du_k)|(Ω), the pairing term being zero")
    failure_confirmed: bool = Field(
        ..., description="Bounded seminorms while u_k → 0 a.e. but not in L¹(|A|)"
    )


def _abs_profile_integral(profile, lo: float, hi: float) -> float:
    points = [t for t in profile.breakpoints() if lo < t < hi]
    return quad1d(lambda t: abs(profile.value(t)), lo, hi, points=points)


def compactness_failure_demo(
    dimension: int = 2,
    f: ProfileSpec = None,
    indices: Sequence[int] = (1, 2, 4, 8, 16, 32),
    check_pairing: bool = True,
    phi: Optional[TestFunction] = None,
    tol: float = 1e-8,
) -> CompactnessReport:
    """
    The sequence with vanishing pairings whose masses in L¹(|A|) tend to
    2^{N−1}|f(0)|, so no subsequence converges to the a.e. limit 0.

    Raises:
        BadParams: If the dimension is below 2 or an index is not positive
    """
    profile = ConstantProfile(1.0) if f is None else profile_from_dict(f)
    field = transversal(dimension, profile)
    n = field.dimension
    if not indices or any(int(k) != k or k < 1 for k in indices):
        raise BadParams(f"indices must be positive integers, got {list(indices)}")
    factor = 2.0 ** (n - 1)
    masses = [factor * k * _abs_profile_integral(profile, 0.0, 1.0 / k) for k in indices]
    limit_mass = factor * abs(profile.value(0.0))

    values: List[float] = []
    if check_pairing:
        phi = phi or bump((0.0,) * n, 0.5)
        lam = LambdaSelector.constant(0.5)
        for k in indices:
            lo = (-1.0,) * (n - 1) + (0.0,)
            hi = (1.0,) * (n - 1) + (1.0 / k,)
            u_k = BoxSet.box(lo, hi).indicator(float(k))
            try:
                values.append(pairing_apply(field, u_k, lam, phi))
            except PairingCalcError as exc:
                raise BadParams(f"pairing of u_{k} could not be evaluated: {exc}") from exc

    vanishing = all(abs(v) <= tol for v in values)
    failure = vanishing and limit_mass > tol
    logger.info(
        f"compactness demo N={n}: masses {masses[0]:.6g} .. {masses[-1]:.6g}, limit {limit_mass:.6g}"
    )
    return CompactnessReport(
        dimension=n,
        indices=[int(k) for k in indices],
        masses=masses,
        limit_mass=limit_mass,
        pairing_values=values,
        seminorm_bound=max(masses),
        failure_confirmed=failure,
    )
