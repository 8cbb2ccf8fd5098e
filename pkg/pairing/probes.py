"""
Non-measure detection.

A pairing that is a Radon measure satisfies |⟨(A, Du)_λ, φ⟩| ≤ C‖φ‖_∞ on a
fixed compact set. The probes below evaluate the pairing distribution on
families of test functions with ‖φ_k‖_∞ ≤ 1 that concentrate on the
singular set, and report whether the values stay bounded.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from core.errors import BadParams
from core.quadrature import BoxIntegrator
from fields.field import FieldND
from fields.profiles import BumpProfile, OddProfile, PlateauProfile
from fields.testfunc import TensorProductFunction, TestFunction, TestFunctionSum, bump
from measures.selector import LambdaSelector

from .apply import Scalar, pairing_apply
from .boxes import BoxSet

logger = logging.getLogger(__name__)

DEFAULT_SIZES = tuple(range(2, 11))
SLOPE_THRESHOLD = 0.5


@dataclass(frozen=True)
class ProbeMember:
    """One member of a probe family; lam replaces the caller's λ when set."""

    k: int
    phi: TestFunction
    lam: Optional[LambdaSelector] = None


class ProbeReport(BaseModel):
    """Pairing values along a probe family and the verdict drawn from them."""

    field: str = Field(..., description="Catalog name of the field")
    family: str = Field(..., description="Name of the probe family")
    sizes: List[int] = Field(..., description="Family parameters k")
    values: List[float] = Field(..., description="⟨(A, Du)_λ, φ_k⟩ for each k")
    slope: float = Field(..., description="Least-squares slope of |values| against log k")
    verdict: Literal["Measure", "NotMeasure"] = Field(..., description="Divergence verdict")

    @property
    def magnitudes(self) -> List[float]:
        return [abs(v) for v in self.values]


def vortex_family(sizes: Iterable[int] = DEFAULT_SIZES) -> List[ProbeMember]:
    """
    φ_k(x) = σ_k(x₁)β(x₂): σ_k odd, equal to 1 on [1/k, 1/2] and vanishing
    on (−1/(2k), 1/(2k)); β a bump with β(0) = 1. Against the vortex field
    the pairing with χ_{x₂<0} is the principal value −∫σ_k(t)/t dt, which
    grows like 2 log k.
    """
    members = []
    for k in sizes:
        if k < 2:
            raise BadParams(f"vortex probe needs k ≥ 2, got {k}")
        sigma = OddProfile(PlateauProfile(1.0 / k, 0.5, 0.5 / k))
        members.append(ProbeMember(k, TensorProductFunction((sigma, BumpProfile(0.0, 0.5, 1.0, 3)))))
    return members


def segment_intervals(k: int, reach: float = 0.5) -> List[tuple]:
    """The odd cells of (−reach, reach) split into 2k equal cells."""
    width = 2.0 * reach / (2 * k)
    return [(-reach + 2 * i * width, -reach + (2 * i + 1) * width) for i in range(k)]


def segment_family(
    sizes: Iterable[int] = DEFAULT_SIZES, dimension: int = 2, reach: float = 0.5
) -> List[ProbeMember]:
    """
    λ_k = χ_{F_k} along the x₁-axis, F_k a union of k intervals, and
    φ_k = Σ (bump at a left endpoint − bump at a right endpoint). On the
    segment field ⟨(A, Dχ_{x₂>0})_{λ_k}, φ_k⟩ = −∫_{F_k} ∂₁φ_k = 2k.
    """
    members = []
    for k in sizes:
        if k < 1:
            raise BadParams(f"segment probe needs k ≥ 1, got {k}")
        intervals = segment_intervals(k, reach)
        radius = 0.45 * (intervals[0][1] - intervals[0][0])
        terms = []
        for a, b in intervals:
            for sign, c in ((1.0, a), (-1.0, b)):
                center = (c,) + (0.0,) * (dimension - 1)
                terms.append((sign, bump(center, (radius,) + (0.5,) * (dimension - 1))))
        lam = LambdaSelector.indicator_of_intervals(intervals, axis=0, dimension=dimension)
        members.append(ProbeMember(k, TestFunctionSum(tuple(terms)), lam))
    return members


PROBE_FAMILIES: Dict[str, Callable[..., List[ProbeMember]]] = {
    "vortex": lambda sizes, dimension: vortex_family(sizes),
    "segment": lambda sizes, dimension: segment_family(sizes, dimension),
}


def default_scalar(family: str, dimension: int) -> BoxSet:
    """The set whose indicator each family is designed for."""
    if family == "vortex":
        return BoxSet.box((-1.0, -1.0), (1.0, 0.0))
    return BoxSet.half_space(dimension, 1, 0.0, 1)


def fitted_slope(sizes: Sequence[int], values: Sequence[float]) -> float:
    """Slope of |values| against log k."""
    if len(sizes) < 2:
        return 0.0
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.abs(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def not_measure_probe(
    field: FieldND,
    u: Optional[Scalar] = None,
    lam: Optional[LambdaSelector] = None,
    sizes: Iterable[int] = DEFAULT_SIZES,
    family: Optional[str] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> ProbeReport:
    """
    Evaluate the pairing on a probe family and decide whether it grows.

    The verdict is NotMeasure when |values| grow with slope above
    SLOPE_THRESHOLD against log k and the last value exceeds the first.

    Raises:
        BadParams: If the family is unknown
    """
    family = family or field.probe or "vortex"
    builder = PROBE_FAMILIES.get(family)
    if builder is None:
        raise BadParams(f"unknown probe family {family!r}; expected one of {sorted(PROBE_FAMILIES)}")
    sizes = list(sizes)
    u = u if u is not None else default_scalar(family, field.dimension)
    lam = lam or LambdaSelector.constant(0.5)
    integrator = integrator or BoxIntegrator()

    values = []
    for member in builder(sizes, field.dimension):
        value = pairing_apply(field, u, member.lam or lam, member.phi, integrator)
        logger.debug(f"probe {family} on {field.name}: k={member.k} value {value:.12g}")
        values.append(value)

    slope = fitted_slope(sizes, values)
    magnitudes = [abs(v) for v in values]
    growing = len(values) > 1 and magnitudes[-1] > magnitudes[0] and slope > SLOPE_THRESHOLD
    verdict = "NotMeasure" if growing and math.isfinite(slope) else "Measure"
    if verdict == "NotMeasure":
        logger.info(f"{field.name}: pairing is not a measure (slope {slope:.4g} in log k)")
    return ProbeReport(
        field=field.name, family=family, sizes=sizes, values=values, slope=slope, verdict=verdict
    )
