"""
Consistency checks between a field and its declared divergence.
"""

import itertools
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.config import get_settings
from core.errors import BadParams
from core.quadrature import BoxIntegrator, quad1d

from .field import FieldND
from .measure_nd import integrate
from .testfunc import TensorProductFunction, TestFunction, random_bumps

logger = logging.getLogger(__name__)


def _merged_splits(*maps: Dict[int, Iterable[float]]) -> Dict[int, List[float]]:
    out: Dict[int, set] = {}
    for m in maps:
        for axis, coords in m.items():
            out.setdefault(axis, set()).update(float(c) for c in coords)
    return {axis: sorted(coords) for axis, coords in out.items()}


def flux_integral(
    field: FieldND, phi: TestFunction, integrator: Optional[BoxIntegrator] = None
) -> float:
    """∫ ∇φ · dA over the support of φ (absolutely continuous and segment parts)."""
    return vector_flux(field, phi.gradient, phi.support(), phi.splits(), integrator)


def vector_flux(
    field: FieldND,
    psi: Callable[[np.ndarray], np.ndarray],
    box: Tuple[Sequence[float], Sequence[float]],
    splits: Optional[Dict[int, Iterable[float]]] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """∫ ψ · dA over a closed box outside which ψ vanishes."""
    integrator = integrator or BoxIntegrator()
    lo, hi = box
    splits = _merged_splits(splits or {}, field.splits())
    total = 0.0
    if field.ac is not None:
        total += integrator.integrate(
            lambda x: float(np.dot(psi(x), field.value(x))),
            lo,
            hi,
            splits,
            field.singular_points(),
        )
    for seg in field.segments:
        if not all(
            lo[i] <= seg.through[i] <= hi[i] for i in range(field.dimension) if i != seg.axis
        ):
            continue
        a, b = max(seg.lo, lo[seg.axis]), min(seg.hi, hi[seg.axis])
        total += seg.weight * quad1d(
            lambda t, s=seg: float(psi(s.point(t))[s.axis]),
            a,
            b,
            points=splits.get(seg.axis, ()),
            settings=integrator.settings,
        )
    return total


def divergence_selftest(
    field: FieldND, phi: TestFunction, integrator: Optional[BoxIntegrator] = None
) -> float:
    """
    |∫φ d div A + ∫∇φ · dA| for a test function supported inside the window.

    Raises:
        BadParams: If supp φ is not compactly inside the window
        QuadratureFailure: If a cubature does not converge
    """
    integrator = integrator or BoxIntegrator()
    lo, hi = phi.support()
    wlo, whi = field.window
    if not all(wlo[i] < lo[i] and hi[i] < whi[i] for i in range(field.dimension)):
        raise BadParams(f"test function support {lo}..{hi} leaves the window of {field.name}")
    splits = _merged_splits(phi.splits(), field.splits())
    divergence_side = integrate(phi, field.divergence, box=(lo, hi), splits=splits, integrator=integrator)
    flux_side = flux_integral(field, phi, integrator)
    residual = abs(divergence_side + flux_side)
    logger.debug(
        f"selftest {field.name}: div side {divergence_side:.12g}, flux side {flux_side:.12g}"
    )
    return residual


def random_test_functions(
    field: FieldND,
    count: int,
    rng: Optional[np.random.Generator] = None,
    min_radius: float = 0.2,
    max_radius: float = 0.8,
) -> List[TensorProductFunction]:
    """Bumps placed at random inside the field's window (seeded from the settings)."""
    rng = rng or np.random.default_rng(get_settings().seed)
    lo = np.asarray(field.window[0]) + 1e-3
    hi = np.asarray(field.window[1]) - 1e-3
    return random_bumps(rng, (tuple(lo), tuple(hi)), count, min_radius, max_radius)


def support_check(field: FieldND, samples: int = 3) -> bool:
    """
    supp(div A) ⊆ supp|A|: every atom and every sampled point where a
    divergence density is nonzero has points with A ≠ 0 arbitrarily close.
    """
    delta = 1e-9
    offsets = []
    for i in range(field.dimension):
        for sign in (1.0, -1.0):
            e = np.zeros(field.dimension)
            e[i] = sign * delta
            offsets.append(e)
    offsets.extend(
        delta * np.array(signs)
        for signs in itertools.product((1.0, -1.0), repeat=field.dimension)
    )

    def near_support(x: np.ndarray) -> bool:
        for seg in field.segments:
            on_line = all(
                abs(x[i] - seg.through[i]) <= delta
                for i in range(field.dimension)
                if i != seg.axis
            )
            if on_line and seg.lo <= x[seg.axis] <= seg.hi:
                return True
        return any(np.linalg.norm(field.value(x + e)) > 0 for e in offsets)

    for point, _ in field.divergence.atoms:
        if not near_support(np.asarray(point, dtype=float)):
            logger.warning(f"{field.name}: atom at {point} outside supp|A|")
            return False
    fractions = [(k + 1) / (samples + 1) for k in range(samples)]
    for part in field.divergence.parts:
        free = part.free_axes
        for combo in itertools.product(fractions, repeat=len(free)):
            x = np.array(part.lo, dtype=float)
            for t, i in zip(combo, free):
                x[i] = part.lo[i] + t * (part.hi[i] - part.lo[i])
            if part.density(x) != 0 and not near_support(x):
                logger.warning(f"{field.name}: divergence mass at {x} outside supp|A|")
                return False
    return True
