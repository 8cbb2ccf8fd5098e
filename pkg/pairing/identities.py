"""
Identities satisfied by box pairings: Gauss–Green formulas, the complement
rule, convexity in λ, the λ-difference formula, additivity defects and the
absolutely continuous bound on the perimeter.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from bv.engine import IdentityResidual
from core.errors import BadParams, UnboundedField
from core.quadrature import BoxIntegrator
from fields.catalog import unit_ball_volume
from fields.field import FieldND
from fields.measure_nd import MeasureND, distance, integrate, mass, restrict
from fields.selftest import vector_flux
from fields.testfunc import TestFunction
from measures.selector import LambdaSelector

from .apply import SmoothScalar, pairing_apply
from .boxes import Box, BoxSet
from .measure import (
    pairing_measure_box,
    partition_by_density,
    perimeter,
    restrict_to_reduced_boundary,
    weight_by_lambda,
)

logger = logging.getLogger(__name__)

GAUSS_GREEN_MODES = ("lambda", "interior", "exterior")


@dataclass
class MeasureIdentity:
    """Two measures that should coincide, with |left − right| as the residual."""

    left: MeasureND
    right: MeasureND
    residual: float
    terms: Dict[str, float] = field(default_factory=dict)

    @property
    def lhs(self) -> float:
        return self.terms.get("lhs_mass", math.nan)

    @property
    def rhs(self) -> float:
        return self.terms.get("rhs_mass", math.nan)


def _compare(left: MeasureND, right: MeasureND, integrator: Optional[BoxIntegrator] = None) -> MeasureIdentity:
    return MeasureIdentity(
        left,
        right,
        distance(left, right, integrator),
        {"lhs_mass": mass(left, integrator=integrator), "rhs_mass": mass(right, integrator=integrator)},
    )


def _inside(field_: FieldND, E: BoxSet, window: Optional[Box] = None) -> Box:
    window = window or field_.window
    if not E.is_compactly_inside(*window):
        raise BadParams("the closure of E must lie inside the window")
    return window


def gauss_green_check(
    field_: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    mode: str = "lambda",
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> IdentityResidual:
    """
    div A(E¹) + ∫_{∂*E} λ d div A = −(A, Dχ_E)_λ(∂⁻E).

    mode "interior" uses λ ≡ 0 and "exterior" λ ≡ 1.

    Raises:
        BadParams: If Ē is not inside the window or the mode is unknown
    """
    if mode not in GAUSS_GREEN_MODES:
        raise BadParams(f"unknown Gauss–Green mode {mode!r}; expected one of {GAUSS_GREEN_MODES}")
    if mode == "interior":
        lam = LambdaSelector.constant(0)
    elif mode == "exterior":
        lam = LambdaSelector.constant(1)
    window = _inside(field_, E, window)
    coords = {i: lam.boundaries(i) for i in range(field_.dimension)}
    interior, boundary, _ = partition_by_density(field_.divergence, E, coords)
    interior_mass = mass(interior, window, integrator)
    boundary_mass = mass(weight_by_lambda(boundary, lam), window, integrator)
    pairing_mass = mass(pairing_measure_box(field_, E, lam, window), window, integrator)
    result = IdentityResidual(
        interior_mass + boundary_mass,
        -pairing_mass,
        {"div_interior": interior_mass, "div_boundary": boundary_mass},
    )
    logger.debug(f"gauss_green {field_.name} ({mode}): lhs {result.lhs:.12g}, rhs {result.rhs:.12g}")
    return result


def boundary_divergence(field_: FieldND, E: BoxSet, window: Optional[Box] = None) -> MeasureND:
    """(A, Dχ_E)_0 − (A, Dχ_E)_1, which equals div A ⌞ ∂*E."""
    zero = pairing_measure_box(field_, E, LambdaSelector.constant(0), window)
    one = pairing_measure_box(field_, E, LambdaSelector.constant(1), window)
    return zero - one


def boundary_divergence_check(
    field_: FieldND, E: BoxSet, window: Optional[Box] = None, integrator: Optional[BoxIntegrator] = None
) -> MeasureIdentity:
    window = window or field_.window
    direct = restrict(restrict_to_reduced_boundary(field_.divergence, E), window[0], window[1])
    return _compare(boundary_divergence(field_, E, window), direct, integrator)


def additivity_defect(
    field_: FieldND,
    E: BoxSet,
    F: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
) -> MeasureND:
    """
    (A, Dχ_{E∪F})_λ − (A, Dχ_E)_λ − (A, Dχ_F)_λ for sets with L^N(E ∩ F) = 0.

    Raises:
        BadParams: If E and F overlap in measure
    """
    window = window or field_.window
    if E.intersection_measure(F, window) > 0:
        raise BadParams("additivity defect needs L^N(E ∩ F) = 0")
    union = pairing_measure_box(field_, E.union(F), lam, window)
    return union - pairing_measure_box(field_, E, lam, window) - pairing_measure_box(field_, F, lam, window)


def complement_check(
    field_: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> MeasureIdentity:
    """(A, Dχ_E)_λ = −(A, Dχ_{W∖E})_{1−λ} on the window W."""
    window = window or field_.window
    left = pairing_measure_box(field_, E, lam, window)
    right = -pairing_measure_box(field_, E.complement(window), lam.complement(), window)
    return _compare(left, right, integrator)


def convex_combination_check(
    field_: FieldND,
    E: BoxSet,
    t: float,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> MeasureIdentity:
    """(A, Dχ_E)_t = (1 − t)(A, Dχ_E)_0 + t(A, Dχ_E)_1 for constant λ = t."""
    if not 0.0 <= t <= 1.0:
        raise BadParams(f"t = {t} outside [0, 1]")
    left = pairing_measure_box(field_, E, LambdaSelector.constant(t), window)
    zero = pairing_measure_box(field_, E, LambdaSelector.constant(0), window)
    one = pairing_measure_box(field_, E, LambdaSelector.constant(1), window)
    return _compare(left, zero.scale(1.0 - t) + one.scale(t), integrator)


def lambda_difference_check(
    field_: FieldND,
    E: BoxSet,
    lam1: LambdaSelector,
    lam2: LambdaSelector,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> MeasureIdentity:
    """
    (A, Dχ_E)_{λ₁} − (A, Dχ_E)_{λ₂} = (λ₂ − λ₁) div A ⌞ ∂*E.

    Raises:
        BadParams: If the field has singular parts (|A| not ≪ L^N)
    """
    if not field_.summable:
        raise BadParams(f"{field_.name} is not summable; the λ-difference formula needs |A| ≪ L^N")
    window = window or field_.window

    left = pairing_measure_box(field_, E, lam1, window) - pairing_measure_box(field_, E, lam2, window)
    trace = restrict(restrict_to_reduced_boundary(field_.divergence, E), window[0], window[1])
    right = weight_by_lambda(trace, lam2) - weight_by_lambda(trace, lam1)
    return _compare(left, right, integrator)


def consistency_check(
    field_: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    phi: TestFunction,
    integrator: Optional[BoxIntegrator] = None,
) -> IdentityResidual:
    """pairing_apply(φ) against ∫φ d(A, Dχ_E)_λ."""
    integrator = integrator or BoxIntegrator()
    applied = pairing_apply(field_, E, lam, phi, integrator)
    measure = pairing_measure_box(field_, E, lam)
    integrated = integrate(phi, measure, box=phi.support(), splits=phi.splits(), integrator=integrator)
    return IdentityResidual(applied, integrated)


def sobolev_check(
    field_: FieldND,
    u: SmoothScalar,
    lam: LambdaSelector,
    phi: TestFunction,
    integrator: Optional[BoxIntegrator] = None,
) -> IdentityResidual:
    """For C¹ u, ⟨(A, Du)_λ, φ⟩ = ∫ φ ∇u · dA."""
    integrator = integrator or BoxIntegrator()
    applied = pairing_apply(field_, u, lam, phi, integrator)
    direct = vector_flux(
        field_, lambda x: phi(x) * u.gradient(x), phi.support(), phi.splits(), integrator
    )
    return IdentityResidual(applied, direct)


def isoperimetric_constant(n: int) -> float:
    """c_N = N (2N/(N+1))^{(N−1)/2} ω_N / ω_{N−1}."""
    if n < 1:
        raise BadParams(f"dimension must be positive, got {n}")
    return n * (2.0 * n / (n + 1.0)) ** ((n - 1) / 2.0) * unit_ball_volume(n) / unit_ball_volume(n - 1)


@dataclass
class AcBound:
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-12) + 1e-12


def ac_bound_check(
    field_: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> AcBound:
    """
    P_{A,λ}(E, W) ≤ 2 c_N ‖A‖_∞ H^{N−1}(∂⁻E ∩ W).

    Raises:
        UnboundedField: If the field has no essential bound
    """
    if field_.essential_sup is None or not math.isfinite(field_.essential_sup):
        raise UnboundedField(f"{field_.name} is not essentially bounded")
    window = window or field_.window
    lhs = perimeter(field_, E, lam, window, integrator)
    area = E.boundary_area(window)
    rhs = 2.0 * isoperimetric_constant(field_.dimension) * field_.essential_sup * area
    bound = AcBound(lhs, rhs)
    if not bound.holds:
        logger.warning(f"ac bound fails for {field_.name}: {lhs:.6g} > {rhs:.6g}")
    return bound
