"""
Evaluation of the pairing distribution on a test function:

    ⟨(A, Du)_λ, φ⟩ = −∫ u^λ φ d div A − ∫ u^λ ∇φ · dA.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from core.errors import BadParams, NotIntegrable
from core.quadrature import BoxIntegrator, quad1d
from fields.field import FieldND
from fields.measure_nd import restrict
from fields.testfunc import TestFunction
from measures.selector import LambdaSelector

from .boxes import BoxSet, StepFunctionND, representative_point
from .measure import pairing_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmoothScalar:
    """A C¹ scalar u with its gradient; u^λ = u for every λ."""

    label: str
    fn: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x: Sequence[float]) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))

    def gradient(self, x: Sequence[float]) -> np.ndarray:
        return np.asarray(self.grad(np.asarray(x, dtype=float)), dtype=float)

    @classmethod
    def affine(cls, coefficients: Sequence[float], offset: float = 0.0) -> "SmoothScalar":
        a = np.asarray(coefficients, dtype=float)
        return cls(
            f"{list(a)}·x + {offset:g}",
            lambda x: float(a @ x) + offset,
            lambda x: a,
        )


Scalar = Union[BoxSet, StepFunctionND, SmoothScalar, TestFunction]


def _as_scalar(u: Scalar) -> Union[StepFunctionND, SmoothScalar, TestFunction]:
    if isinstance(u, BoxSet):
        return u.indicator()
    return u


def _finite(value: float, term: str) -> float:
    if not math.isfinite(value):
        raise NotIntegrable(term, "non-finite contribution")
    return value


def pairing_apply(
    field: FieldND,
    u: Scalar,
    lam: LambdaSelector,
    phi: TestFunction,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """
    ⟨(A, Du)_λ, φ⟩ for u = χ_E, a step function or a C¹ scalar.

    Atom terms are exact; face and volume terms are integrated cell by cell
    on a grid that makes u^λ constant on every cell.

    Raises:
        BadParams: If supp φ leaves the window
        NotIntegrable: If a term is not finite
        QuadratureFailure: If a cubature does not converge
    """
    integrator = integrator or BoxIntegrator()
    u = _as_scalar(u)
    step = isinstance(u, StepFunctionND)
    lo, hi = phi.support()
    wlo, whi = field.window
    if not all(wlo[i] < lo[i] and hi[i] < whi[i] for i in range(field.dimension)):
        raise BadParams(f"test function support {lo}..{hi} leaves the window of {field.name}")

    coords: Dict[int, List[float]] = {i: list(c) for i, c in phi.splits().items()}
    if step:
        for axis, values in u.coordinate_map().items():
            coords.setdefault(axis, []).extend(values)
    grid = pairing_grid(field, coords, lam, (lo, hi))
    grid_coords = grid.coordinate_map()
    singular = field.singular_points()
    n = field.dimension

    divergence_term = 0.0
    divergence = restrict(field.divergence, lo, hi, closed=True)
    for point, weight in divergence.atoms:
        value = phi(point)
        if value == 0.0:
            continue
        rep = u.representative(point, lam) if step else u(point)
        divergence_term += _finite(rep * value * weight, "L1(|div A|)")
    for part in divergence.parts:
        pieces = part.split(grid_coords) if step else [part]
        for piece in pieces:
            if step:
                rep = u.representative(piece.centre(), lam, on_face=piece.order < n)
                if rep == 0.0:
                    continue
                integrand = lambda x, d=piece.density, r=rep: r * phi(x) * d(x)  # noqa: E731
            else:
                integrand = lambda x, d=piece.density: u(x) * phi(x) * d(x)  # noqa: E731
            divergence_term += integrator.integrate(
                integrand, piece.lo, piece.hi, piece.density.split_map(), piece.density.singular_points
            )

    flux_term = 0.0
    if field.ac is not None:
        if step:
            for cell in grid.cells():
                rep = u.value(representative_point(*cell))
                if rep == 0.0:
                    continue
                flux_term += rep * integrator.integrate(
                    lambda x: float(np.dot(phi.gradient(x), field.value(x))),
                    cell[0],
                    cell[1],
                    None,
                    singular,
                )
        else:
            flux_term += integrator.integrate(
                lambda x: u(x) * float(np.dot(phi.gradient(x), field.value(x))),
                lo,
                hi,
                grid_coords,
                singular,
            )

    for seg in field.segments:
        if not all(lo[i] <= seg.through[i] <= hi[i] for i in range(n) if i != seg.axis):
            continue
        a, b = max(seg.lo, lo[seg.axis]), min(seg.hi, hi[seg.axis])
        cuts = [a] + [c for c in grid_coords[seg.axis] if a < c < b] + [b]
        for s, t in zip(cuts, cuts[1:]):
            if step:
                rep = u.representative(seg.point(0.5 * (s + t)), lam, on_face=True)
                if rep == 0.0:
                    continue
                integrand = lambda r, g=rep, sg=seg: g * phi.gradient(sg.point(r))[sg.axis]  # noqa: E731
            else:
                integrand = lambda r, sg=seg: u(sg.point(r)) * phi.gradient(sg.point(r))[sg.axis]  # noqa: E731
            flux_term += seg.weight * quad1d(integrand, s, t, settings=integrator.settings)

    value = -_finite(divergence_term, "L1(|div A|)") - _finite(flux_term, "L1(|A|)")
    logger.debug(
        f"pairing_apply {field.name}: div term {divergence_term:.12g}, flux term {flux_term:.12g}"
    )
    return value
