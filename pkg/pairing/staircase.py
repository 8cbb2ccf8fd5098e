"""
The staircase set: a bounded set whose reduced boundary has infinite length
but whose pairing with A = (f(x₂)g(x₁), 0, …, 0) is still a finite measure.

    F = (0, 1)×(0, ½) ∪ ⋃_n (0, s_n)×(1 − 2^{−n}, 1 − 2^{−n−1}),  s_n = 1 + Σ_{k≤n} (−1)^{k−1}/k

(times (0, 1)^{N−2}). Only finitely many strips are stored; the omitted
ones sit in the band (1 − 2^{−K−1}, 1) and their contribution is bounded
analytically.
"""

import logging
from typing import Optional

from pydantic import BaseModel, Field

from core.errors import BadParams
from core.quadrature import BoxIntegrator, quad1d
from fields.field import FieldND
from fields.measure_nd import mass
from fields.profiles import Profile
from measures.selector import LambdaSelector

from .boxes import BoxSet
from .measure import pairing_measure_box, partition_by_density

logger = logging.getLogger(__name__)


def alternating_partial_sum(n: int) -> float:
    """s_n = 1 + Σ_{k=1}^n (−1)^{k−1}/k, which tends to 1 + log 2."""
    return 1.0 + sum((-1.0) ** (k - 1) / k for k in range(1, n + 1))


def strip_band(n: int) -> tuple:
    return 1.0 - 2.0 ** (-n), 1.0 - 2.0 ** (-n - 1)


def staircase_set(depth: int, dimension: int = 2) -> BoxSet:
    """
    The staircase truncated after `depth` strips.

    Raises:
        BadParams: If depth < 1 or dimension < 2
    """
    if depth < 1:
        raise BadParams(f"truncation depth must be at least 1, got {depth}")
    if dimension < 2:
        raise BadParams("the staircase lives in dimension at least 2")
    tail = (0.0,) * (dimension - 2), (1.0,) * (dimension - 2)
    boxes = [((0.0, 0.0) + tail[0], (1.0, 0.5) + tail[1])]
    for n in range(1, depth + 1):
        a, b = strip_band(n)
        boxes.append(((0.0, a) + tail[0], (alternating_partial_sum(n), b) + tail[1]))
    return BoxSet(dimension, tuple(boxes))


class StaircaseReport(BaseModel):
    """Both sides of the Gauss–Green identity on the truncated staircase."""

    depth: int = Field(..., description="Number of retained strips K")
    lhs: float = Field(..., description="div A over the truncated set")
    rhs: float = Field(..., description="Minus the pairing mass on the retained faces of L")
    residual: float = Field(..., description="|lhs − rhs|")
    tail_bound: float = Field(..., description="Analytic bound on the omitted strips")

    @property
    def within_bound(self) -> bool:
        return self.residual <= self.tail_bound


def _profiles(field: FieldND) -> tuple:
    params = field.param_map
    f, g = params.get("f"), params.get("g")
    if not isinstance(f, Profile) or not isinstance(g, Profile):
        raise BadParams(f"{field.name} is not a staircase-type field with profiles f and g")
    return f, g


def tail_bound(field: FieldND, depth: int, integrator: Optional[BoxIntegrator] = None) -> float:
    """
    ‖f‖_∞ 2^{−K−1} (∫|g′| + 2‖g‖_∞) over the staircase's extent, bounding
    both the omitted volume term and the omitted face terms.
    """
    f, g = _profiles(field)
    settings = (integrator or BoxIntegrator()).settings
    reach = max(alternating_partial_sum(n) for n in range(1, 3))
    variation = quad1d(lambda t: abs(g.derivative(t)), 0.0, reach, points=g.breakpoints(), settings=settings)
    band = 2.0 ** (-depth - 1)
    return f.sup_abs(0.0, 1.0) * band * (variation + 2.0 * g.sup_abs(0.0, reach))


def staircase_check(
    field: FieldND,
    depth: int,
    lam: Optional[LambdaSelector] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> StaircaseReport:
    """
    ∫_F f g′ dx = −∫_L h dH^{N−1} checked on the truncation F_K.

    The left side is div A(F_K¹). The right side keeps the whole left face
    {0}×(0, 1) of L, so the gap is the part of that face above the last
    retained strip and decreases like 2^{−K−1}.

    Raises:
        BadParams: If the field has no f, g profiles or depth < 1
    """
    f, g = _profiles(field)
    integrator = integrator or BoxIntegrator()
    lam = lam or LambdaSelector.constant(0.5)
    E = staircase_set(depth, field.dimension)
    window = field.window
    if not E.is_compactly_inside(*window):
        raise BadParams(f"staircase of depth {depth} leaves the window of {field.name}")

    interior, _, _ = partition_by_density(field.divergence, E)
    lhs = mass(interior, window, integrator)
    pairing_mass = mass(pairing_measure_box(field, E, lam, window), window, integrator)
    top = strip_band(depth)[1]
    left_face_tail = g.value(0.0) * quad1d(f.value, top, 1.0, points=f.breakpoints(), settings=integrator.settings)
    rhs = -(pairing_mass + left_face_tail)
    report = StaircaseReport(
        depth=depth,
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        tail_bound=tail_bound(field, depth, integrator),
    )
    logger.debug(
        f"staircase K={depth}: lhs {lhs:.12g}, rhs {rhs:.12g}, bound {report.tail_bound:.3g}"
    )
    return report
