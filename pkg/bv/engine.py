"""
Exact one-dimensional pairing engine.

In one dimension div A = DA, and for u ∈ BV^{A,λ} the pairing is recovered
from the Leibniz rule D(uA) = u^λ DA + (A, Du)_λ. All computations below run
on piecewise analytic data, so approximate limits are one-sided limits and
every measure is a finite atom list plus piecewise densities.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from core.errors import (
    IndeterminateForm,
    NonIntegrablePiece,
    NotBV,
    NotInBVA,
    NotIntegrable,
    UnsupportedPiece,
)
from measures.functions import PiecewiseFunction1D
from measures.measure1d import Measure1D, add, mass, restrict, scale, total_variation
from measures.pieces import Number, Poly
from measures.selector import LambdaSelector
from measures.sets import BorelSet1D, Interval1D

from .extreal import NEG_INF, POS_INF, ExtReal

logger = logging.getLogger(__name__)


def approx_limits(u: PiecewiseFunction1D, x: float) -> Tuple[ExtReal, ExtReal]:
    """
    Approximate liminf and limsup of u at x.

    Args:
        u: Piecewise function
        x: Point of the domain

    Returns:
        (u⁻(x), u⁺(x)) as the min and max of the one-sided limits
    """
    left, right = u.limits(x)
    return ExtReal(min(left, right)), ExtReal(max(left, right))


def lambda_representative(
    u: PiecewiseFunction1D, lam: LambdaSelector, x: float
) -> ExtReal:
    """
    u^λ(x) = (1 − λ(x))u⁻(x) + λ(x)u⁺(x), with the Z_u conventions.

    On Z_u (u⁻ = −∞, u⁺ = +∞) the value is +∞, 0 or −∞ as λ(x) is greater
    than, equal to or less than 1/2.

    Raises:
        IndeterminateForm: If the combination is ∞ − ∞ with both weights nonzero
    """
    lower, upper = approx_limits(u, x)
    if float(lower) == float(upper):
        return lower
    t = lam.value(x)
    if lower == NEG_INF and upper == POS_INF:
        if t > 0.5:
            return POS_INF
        if t < 0.5:
            return NEG_INF
        return ExtReal(0.0)
    try:
        return lower * (1 - t) + upper * t
    except IndeterminateForm:
        raise IndeterminateForm(x) from None


def derivative(u: PiecewiseFunction1D) -> Measure1D:
    """
    Distributional derivative Du of a BV function.

    Raises:
        NotBV: If a one-sided limit is infinite or a piece has infinite variation
    """
    density = []
    for sub, piece in zip(u.intervals(), u.pieces):
        for end, side in ((sub.lo, +1), (sub.hi, -1)):
            try:
                value = piece.limit(end, side)
            except UnsupportedPiece as exc:
                raise NotBV(f"no one-sided limit at {end}: {exc}") from exc
            if not math.isfinite(value):
                raise NotBV(f"{piece!r} is unbounded near {end}")
        slope = piece.derivative()
        try:
            slope.abs_integral(sub.lo, sub.hi)
        except NonIntegrablePiece as exc:
            raise NotBV(f"derivative not integrable on {sub}") from exc
        density.append((sub, slope))

    atoms = []
    for b in u.breakpoints:
        left, right = u.limits(b)
        atoms.append((b, right - left))
    return Measure1D.build(u.domain, atoms, density)


def density_function(mu: Measure1D) -> PiecewiseFunction1D:
    """The density of μ as a piecewise function (zero off its parts)."""
    return PiecewiseFunction1D.from_parts(
        mu.domain, [(i.lo, i.hi, p) for i, p in mu.density]
    )


def _abs_integral(f: PiecewiseFunction1D) -> float:
    return sum(p.abs_integral(i.lo, i.hi) for i, p in zip(f.intervals(), f.pieces))


@dataclass
class MembershipCertificate:
    """Outcome of a class membership test, with the finite norms or the divergent term."""

    accepted: bool
    l1_A: Optional[float] = None
    l1_divA: Optional[float] = None
    divergent_term: Optional[str] = None
    detail: Optional[str] = None

    @classmethod
    def accept(cls, l1_A: float, l1_divA: float) -> "MembershipCertificate":
        """
        Create a certificate of membership.

        Args:
            l1_A: ‖u^λ‖ in L¹(|A|)
            l1_divA: ‖u^λ‖ in L¹(|DA|)

        Returns:
            MembershipCertificate with accepted=True
        """
        return cls(accepted=True, l1_A=l1_A, l1_divA=l1_divA)

    @classmethod
    def reject(cls, term: str, detail: Optional[str] = None) -> "MembershipCertificate":
        """
        Create a certificate of non-membership.

        Args:
            term: The divergent term
            detail: Optional diagnostic

        Returns:
            MembershipCertificate with accepted=False
        """
        return cls(accepted=False, divergent_term=term, detail=detail)

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> Dict[str, Any]:
        return {
            "accepted": self.accepted,
            "l1_A": self.l1_A,
            "l1_divA": self.l1_divA,
            "divergent_term": self.divergent_term,
            "detail": self.detail,
        }


def _representative_against(
    u: PiecewiseFunction1D, lam: LambdaSelector, mu: Measure1D, absolute: bool
) -> float:
    """∫ u^λ dμ, or ∫ |u^λ| d|μ| when absolute."""
    total = 0.0
    for x, w in mu.atoms:
        value = lambda_representative(u, lam, x)
        total += abs(value * w) if absolute else float(value * w)
    rho = density_function(mu)
    product = u.times(rho)
    if absolute:
        return total + _abs_integral(product)
    return total + sum(
        p.integral(i.lo, i.hi) for i, p in zip(product.intervals(), product.pieces)
    )


def in_class_X(
    u: PiecewiseFunction1D, A: PiecewiseFunction1D, lam: LambdaSelector
) -> MembershipCertificate:
    """
    Test u^λ ∈ L¹(|A|) ∩ L¹(|DA|).

    Args:
        u: Scalar function
        A: BV field
        lam: Selector

    Returns:
        Certificate reporting both norms, or the divergent term
    """
    dA = derivative(A)
    try:
        l1_A = _abs_integral(u.times(A))
    except (NonIntegrablePiece, UnsupportedPiece) as exc:
        return MembershipCertificate.reject("L1(|A|)", str(exc))
    try:
        l1_divA = _representative_against(u, lam, dA, absolute=True)
    except IndeterminateForm as exc:
        return MembershipCertificate.reject("L1(|DA|)", str(exc))
    except (NonIntegrablePiece, UnsupportedPiece) as exc:
        return MembershipCertificate.reject("L1(|DA|)", str(exc))
    if not math.isfinite(l1_divA):
        return MembershipCertificate.reject("L1(|DA|)", "u^λ infinite at an atom of DA")
    return MembershipCertificate.accept(l1_A, l1_divA)


@dataclass
class PairingResult1D:
    """(A, Du)_λ together with the two measures of the Leibniz rule."""

    pairing: Measure1D
    uA_derivative: Measure1D
    u_lambda_divA: Measure1D
    certificate: Optional[MembershipCertificate] = field(default=None, compare=False)

    def leibniz_defect(self) -> float:
        """|pairing + u^λ DA − D(uA)|(Ω); zero up to rounding."""
        return total_variation(
            add(self.pairing, self.u_lambda_divA) - self.uA_derivative
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pairing": self.pairing.to_dict(),
            "uA_derivative": self.uA_derivative.to_dict(),
            "u_lambda_divA": self.u_lambda_divA.to_dict(),
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def lambda_times_measure(
    u: PiecewiseFunction1D, lam: LambdaSelector, mu: Measure1D
) -> Measure1D:
    """u^λ μ: atoms weighted by u^λ, density multiplied by u."""
    atoms = [(x, lambda_representative(u, lam, x) * w) for x, w in mu.atoms]
    density = []
    for interval, rho in mu.density:
        for sub, piece in u.pieces_on(interval):
            density.append((sub, piece.times(rho)))
    return Measure1D.build(mu.domain, [(x, float(w)) for x, w in atoms], density)


def pairing_1d(
    A: PiecewiseFunction1D, u: PiecewiseFunction1D, lam: LambdaSelector
) -> PairingResult1D:
    """
    (A, Du)_λ = D(uA) − u^λ DA.

    Args:
        A: BV field
        u: Scalar function in X^{A,λ}
        lam: Selector

    Returns:
        PairingResult1D with the audit measures

    Raises:
        NotBV: If A is not BV
        NotIntegrable: If u ∉ X^{A,λ}
        NotInBVA: If uA is not BV
    """
    dA = derivative(A)
    certificate = in_class_X(u, A, lam)
    if not certificate:
        raise NotIntegrable(certificate.divergent_term, certificate.detail)
    try:
        uA_derivative = derivative(u.times(A))
    except NotBV as exc:
        raise NotInBVA(f"uA is not BV: {exc}") from exc
    u_lambda_divA = lambda_times_measure(u, lam, dA)
    pairing = add(uA_derivative, scale(u_lambda_divA, -1))
    logger.debug(
        f"pairing_1d: {len(pairing.atoms)} atoms, {len(pairing.density)} density parts"
    )
    return PairingResult1D(pairing, uA_derivative, u_lambda_divA, certificate)


def integrate_representative(
    u: PiecewiseFunction1D, lam: LambdaSelector, mu: Measure1D
) -> float:
    """∫ u^λ dμ."""
    return _representative_against(u, lam, mu, absolute=False)


def seminorm_bva(
    u: PiecewiseFunction1D,
    A: PiecewiseFunction1D,
    lam: Optional[LambdaSelector] = None,
) -> float:
    """
    ‖u‖_{L¹(|A|)} + ‖u^λ‖_{L¹(|DA|)} + |D(uA)|(Ω).

    When DA has no atoms the middle term only sees u against the density of
    DA and lam is not needed; otherwise u^λ is evaluated at the atoms, with
    λ ≡ 0 when lam is None.
    """
    lam = lam or LambdaSelector.constant(0)
    certificate = in_class_X(u, A, lam)
    if not certificate:
        raise NotIntegrable(certificate.divergent_term, certificate.detail)
    try:
        uA_derivative = derivative(u.times(A))
    except NotBV as exc:
        raise NotInBVA(f"uA is not BV: {exc}") from exc
    return certificate.l1_A + certificate.l1_divA + total_variation(uA_derivative)


def truncate(u: PiecewiseFunction1D, k: Number) -> PiecewiseFunction1D:
    """
    T_k(u) = max(−k, min(u, k)), with breakpoints where pieces cross ±k.
    """
    parts = []
    for sub, piece in zip(u.intervals(), u.pieces):
        crossings = set()
        for level in (k, -k):
            try:
                crossings.update(piece.solve(float(level), float(sub.lo), float(sub.hi)))
            except UnsupportedPiece:
                continue
        cuts = [sub.lo, *sorted(crossings), sub.hi]
        for lo, hi in zip(cuts, cuts[1:]):
            if hi <= lo:
                continue
            mid = float(piece.value((float(lo) + float(hi)) / 2.0))
            if mid > k:
                parts.append((lo, hi, Poly.constant(k)))
            elif mid < -k:
                parts.append((lo, hi, Poly.constant(-k)))
            else:
                parts.append((lo, hi, piece))
    merged: List[Tuple[Any, Any, Any]] = []
    for lo, hi, piece in parts:
        if merged and merged[-1][2] == piece and isinstance(piece, Poly):
            merged[-1] = (merged[-1][0], hi, piece)
        else:
            merged.append((lo, hi, piece))
    clamped = {x: max(-k, min(v, k)) for x, v in u.point_values}
    truncated = PiecewiseFunction1D.from_parts(u.domain, merged)
    return truncated.with_point_values(clamped) if clamped else truncated


def distance_l1_A(
    u: PiecewiseFunction1D, v: PiecewiseFunction1D, A: PiecewiseFunction1D
) -> float:
    """‖u − v‖_{L¹(|A|)}."""
    return _abs_integral(u.plus(v.scale(-1)).times(A))


def distance_l1_divA(
    u: PiecewiseFunction1D,
    v: PiecewiseFunction1D,
    A: PiecewiseFunction1D,
    lam: LambdaSelector,
) -> float:
    """‖u^λ − v^λ‖_{L¹(|DA|)}."""
    dA = derivative(A)
    total = 0.0
    for x, w in dA.atoms:
        gap = lambda_representative(u, lam, x) - lambda_representative(v, lam, x)
        total += abs(gap * w)
    difference = u.plus(v.scale(-1))
    return total + _abs_integral(difference.times(density_function(dA)))


@dataclass
class IdentityResidual:
    """Both sides of an identity and their gap."""

    lhs: float
    rhs: float
    terms: Dict[str, float] = field(default_factory=dict)

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def compact_support_identity(
    A: PiecewiseFunction1D, u: PiecewiseFunction1D, lam: LambdaSelector
) -> IdentityResidual:
    """
    ∫ u^λ dDA against −(A, Du)_λ(Ω) for u with compact support.
    """
    result = pairing_1d(A, u, lam)
    lhs = integrate_representative(u, lam, derivative(A))
    rhs = -mass(result.pairing)
    return IdentityResidual(lhs, rhs)


def _set_geometry(
    domain: Interval1D, E: BorelSet1D
) -> Tuple[BorelSet1D, List[float]]:
    """(E¹, ∂*E) for a finite union of intervals, read off the jumps of χ_E."""
    chi = PiecewiseFunction1D.indicator(domain, E)
    interior_points = []
    boundary = []
    for b in chi.breakpoints:
        left, right = chi.limits(b)
        if left != right:
            boundary.append(b)
        elif left == 1:
            interior_points.append(b)
    return BorelSet1D(E.intervals, tuple(interior_points)), boundary


def integration_by_parts_1d(
    A: PiecewiseFunction1D,
    u: PiecewiseFunction1D,
    E: BorelSet1D,
    lam1: LambdaSelector,
    lam2: LambdaSelector,
) -> IdentityResidual:
    """
    Integration by parts on a union of intervals compactly inside Ω:

        ∫_{E¹} u^{λ₁} dDA + ∫_{∂*E} λ₂ u^{λ₁} dDA
            + (A, Du)_{λ₁}(E¹) + ∫_{∂*E} λ₂ d(A, Du)_{λ₁}
        = −(u^{λ₁}A, Dχ_E)_{λ₂}(∂*E)

    λ₂ ≡ 0 and λ₂ ≡ 1 give the interior and exterior trace versions.

    Raises:
        NotIntegrable: If u ∉ X^{A,λ₁}
        NotInBVA: If uA is not BV
    """
    domain = A.domain
    for interval in E.intervals:
        if not (domain.lo < interval.lo and interval.hi < domain.hi):
            raise NotIntegrable("E", f"{interval} is not compactly inside {domain}")
    interior, boundary = _set_geometry(domain, E)
    dA = derivative(A)
    pairing = pairing_1d(A, u, lam1).pairing

    interior_divA = integrate_representative(u, lam1, restrict(dA, interior))
    interior_pairing = mass(pairing, interior)
    boundary_divA = 0.0
    boundary_pairing = 0.0
    for b in boundary:
        weight = lam2.value(b)
        boundary_divA += float(
            lambda_representative(u, lam1, b) * weight * dA.atom_weight(b)
        )
        boundary_pairing += float(weight) * float(pairing.atom_weight(b))
    lhs = interior_divA + boundary_divA + interior_pairing + boundary_pairing

    chi = PiecewiseFunction1D.indicator(domain, E)
    trace_pairing = pairing_1d(u.times(A), chi, lam2).pairing
    rhs = -mass(trace_pairing, BorelSet1D((), tuple(boundary)))
    return IdentityResidual(
        lhs,
        rhs,
        {
            "interior_divA": interior_divA,
            "boundary_divA": boundary_divA,
            "interior_pairing": interior_pairing,
            "boundary_pairing": boundary_pairing,
        },
    )


def gauss_green_1d(
    A: PiecewiseFunction1D, E: BorelSet1D, lam: LambdaSelector
) -> IdentityResidual:
    """DA(E¹) + ∫_{∂*E} λ dDA = −(A, Dχ_E)_λ(∂*E)."""
    one = PiecewiseFunction1D.constant(A.domain, 1)
    return integration_by_parts_1d(A, one, E, LambdaSelector.constant(0), lam)
