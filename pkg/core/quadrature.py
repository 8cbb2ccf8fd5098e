"""
Adaptive quadrature and cubature over boxes, with point singularities.

Boxes may be flat along some axes (lo == hi); integration runs over the free
axes only, so the same routine integrates volumes, faces and segments.
A point singularity is handled by splitting the box so that the point is a
corner of every sub-box touching it, integrating those sub-boxes in polar
coordinates outside a ball of radius ε, and extrapolating ε → 0 over
{ε, ε/2, ε/4}.
"""

import itertools
import logging
import math
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
from scipy import integrate

from .config import Settings, get_settings
from .errors import QuadratureFailure

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], float]


def quad1d(
    f: Callable[[float], float],
    a: float,
    b: float,
    points: Optional[Iterable[float]] = None,
    settings: Optional[Settings] = None,
) -> float:
    """
    Integrate a scalar function over [a, b].

    Args:
        f: Integrand
        a: Lower limit
        b: Upper limit
        points: Interior break points where f is not smooth
        settings: Tolerances (process settings if None)

    Returns:
        Value of the integral

    Raises:
        QuadratureFailure: If the result is not finite
    """
    settings = settings or get_settings()
    if b <= a:
        return 0.0
    inner = sorted({float(p) for p in points or () if a < p < b})
    value, abserr, info, *rest = integrate.quad(
        f,
        a,
        b,
        points=inner or None,
        epsabs=settings.quad_atol,
        epsrel=settings.quad_rtol,
        limit=200,
        full_output=1,
    )
    if not math.isfinite(value):
        raise QuadratureFailure(f"non-finite integral on ({a}, {b})")
    if rest:
        logger.debug(f"quad on ({a}, {b}): {rest[0]} (abserr={abserr:.3g})")
    return float(value)


def _richardson(values: Sequence[float]) -> float:
    # eliminates the O(ε) and O(ε²) terms of T(ε), T(ε/2), T(ε/4)
    t0, t1, t2 = values
    first = 2.0 * t1 - t0
    second = 2.0 * t2 - t1
    return (4.0 * second - first) / 3.0


class BoxIntegrator:
    """Cubature over (possibly flat) boxes with optional point singularities."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.logger = logging.getLogger(__name__)

    def integrate(
        self,
        f: Integrand,
        lo: Sequence[float],
        hi: Sequence[float],
        splits: Optional[Dict[int, Iterable[float]]] = None,
        singular_points: Iterable[Sequence[float]] = (),
    ) -> float:
        """
        Integrate f over the box [lo, hi].

        Args:
            f: Integrand taking a full N-dimensional point
            lo: Lower corner
            hi: Upper corner (equal to lo along flat axes)
            splits: Per-axis coordinates where f is not smooth
            singular_points: Points where f may blow up integrably

        Returns:
            Value of the integral
        """
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if np.any(hi < lo):
            return 0.0
        free = [i for i in range(lo.size) if hi[i] > lo[i]]
        if not free:
            return float(f(lo.copy()))

        relevant = []
        for point in singular_points:
            point = np.asarray(point, dtype=float)
            flat_match = all(
                abs(point[i] - lo[i]) <= 1e-14 for i in range(lo.size) if i not in free
            )
            inside = all(lo[i] <= point[i] <= hi[i] for i in free)
            if flat_match and inside:
                relevant.append(point)

        grid: List[List[float]] = []
        for axis in free:
            coords = {lo[axis], hi[axis]}
            for c in (splits or {}).get(axis, ()):
                if lo[axis] < c < hi[axis]:
                    coords.add(float(c))
            for point in relevant:
                if lo[axis] < point[axis] < hi[axis]:
                    coords.add(float(point[axis]))
            grid.append(sorted(coords))

        total = 0.0
        for cell in itertools.product(*[range(len(g) - 1) for g in grid]):
            cell_lo = lo.copy()
            cell_hi = hi.copy()
            for k, axis in enumerate(free):
                cell_lo[axis] = grid[k][cell[k]]
                cell_hi[axis] = grid[k][cell[k] + 1]
            corner = self._singular_corner(cell_lo, cell_hi, free, relevant)
            if corner is None:
                total += self._cubature(f, cell_lo, cell_hi, free)
            else:
                total += self._polar(f, cell_lo, cell_hi, free, corner)
        return total

    def _singular_corner(self, lo, hi, free, points) -> Optional[np.ndarray]:
        for point in points:
            if all(
                abs(point[i] - lo[i]) <= 1e-14 or abs(point[i] - hi[i]) <= 1e-14
                for i in free
            ):
                return point
        return None

    def _cubature(self, f: Integrand, lo, hi, free) -> float:
        base = lo.copy()

        def wrapped(*args):
            x = base.copy()
            # nquad passes the innermost variable first
            for k, axis in enumerate(free):
                x[axis] = args[k]
            return f(x)

        ranges = [(lo[axis], hi[axis]) for axis in free]
        opts = {
            "epsabs": self.settings.quad_atol,
            "epsrel": self.settings.quad_rtol,
            "limit": 100,
        }
        value, abserr = integrate.nquad(wrapped, ranges, opts=[opts] * len(free))
        if not math.isfinite(value):
            raise QuadratureFailure(f"non-finite cubature on box {lo}..{hi}")
        return float(value)

    def _polar(self, f: Integrand, lo, hi, free, corner) -> float:
        d = len(free)
        signs = np.array(
            [1.0 if abs(corner[a] - lo[a]) <= 1e-14 else -1.0 for a in free]
        )
        extents = np.array([hi[a] - lo[a] for a in free])
        eps = min(self.settings.exclusion_radius, 0.25 * float(extents.min()))
        radii = (eps / 4.0, eps / 2.0, eps)
        rtol = self.settings.quad_rtol
        atol = self.settings.quad_atol

        def radial(direction: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                reach = np.where(direction > 0, extents / direction, np.inf)
            R = float(reach.min())

            def g(r: float) -> float:
                x = corner.copy()
                x[free] = corner[free] + signs * r * direction
                return f(x) * r ** (d - 1)

            def piece(a: float, b: float) -> float:
                b = min(b, R)
                if b <= a:
                    return 0.0
                return integrate.quad(g, a, b, epsabs=atol, epsrel=rtol, limit=200)[0]

            main = piece(radii[2], R)
            near = piece(radii[1], radii[2])
            nearest = piece(radii[0], radii[1])
            return np.array([main, main + near, main + near + nearest])

        if d == 1:
            values = radial(np.ones(1))
        else:
            values = self._angles(radial, d, [], rtol, atol)
        if not np.all(np.isfinite(values)):
            raise QuadratureFailure(f"singular cubature failed near {corner}")
        self.logger.debug(f"exclusion-ball values near {corner}: {values}")
        return _richardson(values)

    def _angles(self, radial, d: int, thetas: List[float], rtol, atol) -> np.ndarray:
        if len(thetas) == d - 1:
            direction = np.empty(d)
            running = 1.0
            for k, theta in enumerate(thetas):
                direction[k] = running * math.cos(theta)
                running *= math.sin(theta)
            direction[d - 1] = running
            jacobian = 1.0
            for k in range(d - 2):
                jacobian *= math.sin(thetas[k]) ** (d - 2 - k)
            return jacobian * radial(direction)

        def inner(theta: float) -> np.ndarray:
            return self._angles(radial, d, thetas + [theta], rtol, atol)

        value, _ = integrate.quad_vec(
            inner, 0.0, math.pi / 2.0, epsabs=atol, epsrel=rtol, limit=400
        )
        return np.asarray(value)


def integrate_box(
    f: Integrand,
    lo: Sequence[float],
    hi: Sequence[float],
    splits: Optional[Dict[int, Iterable[float]]] = None,
    singular_points: Iterable[Sequence[float]] = (),
    settings: Optional[Settings] = None,
) -> float:
    """Convenience wrapper around BoxIntegrator.integrate."""
    return BoxIntegrator(settings).integrate(f, lo, hi, splits, singular_points)
