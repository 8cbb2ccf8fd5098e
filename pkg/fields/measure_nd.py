"""
Finite Radon measures on R^N built from atoms and densities on boxes.

A box part carries a density with respect to the Hausdorff measure of its own
dimension: boxes flat along one axis are faces (H^{N−1}), boxes flat along all
but one axis are segments (H¹), full boxes are volume parts (L^N).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BadParams
from core.quadrature import BoxIntegrator

from .forms import Point, ScalarForm

logger = logging.getLogger(__name__)

ATOM_MERGE_TOL = 1e-12


def _point(x: Iterable[float]) -> Point:
    return tuple(float(c) for c in x)


def _inside(x: Sequence[float], lo: Sequence[float], hi: Sequence[float], closed: bool) -> bool:
    if closed:
        return all(a <= c <= b for a, c, b in zip(lo, x, hi))
    return all(a < c < b for a, c, b in zip(lo, x, hi))


@dataclass(frozen=True)
class BoxPart:
    """density · H^k ⌞ [lo, hi], k the number of axes with lo < hi."""

    lo: Point
    hi: Point
    density: ScalarForm

    def __post_init__(self):
        lo, hi = _point(self.lo), _point(self.hi)
        if len(lo) != len(hi) or any(b < a for a, b in zip(lo, hi)):
            raise BadParams(f"bad box part {lo}..{hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def flat_axes(self) -> Tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(zip(self.lo, self.hi)) if a == b)

    @property
    def free_axes(self) -> Tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(zip(self.lo, self.hi)) if a < b)

    @property
    def order(self) -> int:
        return len(self.free_axes)

    def size(self) -> float:
        """H^k measure of the box."""
        return float(np.prod([self.hi[i] - self.lo[i] for i in self.free_axes]))

    def centre(self) -> Point:
        return tuple(0.5 * (a + b) for a, b in zip(self.lo, self.hi))

    def key(self) -> Tuple[Tuple[int, ...], Point]:
        flat = self.flat_axes
        return flat, tuple(self.lo[i] for i in flat)

    def clip(self, lo: Sequence[float], hi: Sequence[float], closed: bool = True) -> Optional["BoxPart"]:
        """
        Intersection with the box [lo, hi] (or the open box when not closed).
        Flat coordinates must lie in the box; free axes are intersected.
        """
        new_lo, new_hi = list(self.lo), list(self.hi)
        for i in range(self.dimension):
            if self.lo[i] == self.hi[i]:
                c = self.lo[i]
                if not (lo[i] <= c <= hi[i] if closed else lo[i] < c < hi[i]):
                    return None
                continue
            new_lo[i] = max(self.lo[i], lo[i])
            new_hi[i] = min(self.hi[i], hi[i])
            if new_hi[i] <= new_lo[i]:
                return None
        return BoxPart(tuple(new_lo), tuple(new_hi), self.density)

    def split(self, coords: Dict[int, Iterable[float]]) -> List["BoxPart"]:
        """Cut along the given per-axis coordinates (free axes only)."""
        grids = []
        for i in self.free_axes:
            cuts = {self.lo[i], self.hi[i]}
            cuts.update(c for c in coords.get(i, ()) if self.lo[i] < c < self.hi[i])
            grids.append(sorted(cuts))
        out = []
        for cell in itertools.product(*[range(len(g) - 1) for g in grids]):
            lo, hi = list(self.lo), list(self.hi)
            for k, i in enumerate(self.free_axes):
                lo[i], hi[i] = grids[k][cell[k]], grids[k][cell[k] + 1]
            out.append(BoxPart(tuple(lo), tuple(hi), self.density))
        return out

    def with_density(self, density: ScalarForm) -> "BoxPart":
        return BoxPart(self.lo, self.hi, density)

    def to_dict(self) -> Dict[str, Any]:
        return {"lo": list(self.lo), "hi": list(self.hi), "density": self.density.label}


def _merge_atoms(atoms: Iterable[Tuple[Sequence[float], float]]) -> Tuple[Tuple[Point, float], ...]:
    merged: List[List[Any]] = []
    for x, w in atoms:
        x = _point(x)
        for entry in merged:
            if max(abs(a - b) for a, b in zip(entry[0], x)) <= ATOM_MERGE_TOL:
                entry[1] += float(w)
                break
        else:
            merged.append([x, float(w)])
    return tuple((x, w) for x, w in merged if w != 0.0)


@dataclass(frozen=True)
class MeasureND:
    """Σ w_i δ_{p_i} + Σ density_k H^{k} ⌞ box_k on R^N."""

    dimension: int
    atoms: Tuple[Tuple[Point, float], ...] = ()
    parts: Tuple[BoxPart, ...] = ()

    def __post_init__(self):
        atoms = _merge_atoms(self.atoms)
        parts = tuple(p for p in self.parts if not p.density.is_zero())
        for x, _ in atoms:
            if len(x) != self.dimension:
                raise BadParams(f"atom {x} is not in R^{self.dimension}")
        for part in parts:
            if part.dimension != self.dimension:
                raise BadParams(f"part {part.lo}..{part.hi} is not in R^{self.dimension}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "parts", parts)

    @classmethod
    def zero(cls, dimension: int) -> "MeasureND":
        return cls(dimension)

    @classmethod
    def dirac(cls, point: Sequence[float], weight: float = 1.0) -> "MeasureND":
        point = _point(point)
        return cls(len(point), ((point, weight),))

    @classmethod
    def on_box(cls, lo: Sequence[float], hi: Sequence[float], density: Any = 1.0) -> "MeasureND":
        """density · H^k ⌞ [lo, hi]; density is a ScalarForm or a number."""
        if not isinstance(density, ScalarForm):
            density = ScalarForm.of_constant(density)
        part = BoxPart(_point(lo), _point(hi), density)
        return cls(part.dimension, (), (part,))

    def __add__(self, other: "MeasureND") -> "MeasureND":
        if self.dimension != other.dimension:
            raise BadParams("measures live in different dimensions")
        return MeasureND(self.dimension, self.atoms + other.atoms, self.parts + other.parts)

    def __neg__(self) -> "MeasureND":
        return self.scale(-1.0)

    def __sub__(self, other: "MeasureND") -> "MeasureND":
        return self + (-other)

    def scale(self, c: float) -> "MeasureND":
        c = float(c)
        return MeasureND(
            self.dimension,
            tuple((x, c * w) for x, w in self.atoms),
            tuple(p.with_density(p.density.scale(c)) for p in self.parts),
        )

    def is_zero(self) -> bool:
        """Structurally zero: no atoms and no parts."""
        return not self.atoms and not self.parts

    def atom_weight(self, point: Sequence[float]) -> float:
        point = _point(point)
        for x, w in self.atoms:
            if max(abs(a - b) for a, b in zip(x, point)) <= ATOM_MERGE_TOL:
                return w
        return 0.0

    def parts_of_order(self, order: int) -> Tuple[BoxPart, ...]:
        return tuple(p for p in self.parts if p.order == order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "atoms": [{"point": list(x), "weight": w} for x, w in self.atoms],
            "parts": [p.to_dict() for p in self.parts],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MeasureND":
        """Atoms and parts with constant densities; labels of other forms are not parsed back."""
        try:
            atoms = tuple((_point(a["point"]), float(a["weight"])) for a in data.get("atoms", []))
            parts = tuple(
                BoxPart(_point(p["lo"]), _point(p["hi"]), ScalarForm.of_constant(float(p["density"])))
                for p in data.get("parts", [])
            )
            return cls(int(data["dimension"]), atoms, parts)
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParams(f"malformed measure description: {exc}") from exc


def restrict(
    mu: MeasureND, lo: Sequence[float], hi: Sequence[float], closed: bool = False
) -> MeasureND:
    """μ ⌞ box, the open box (lo, hi) unless closed."""
    atoms = tuple((x, w) for x, w in mu.atoms if _inside(x, lo, hi, closed))
    parts = []
    for part in mu.parts:
        clipped = part.clip(lo, hi, closed)
        if clipped is not None:
            parts.append(clipped)
    return MeasureND(mu.dimension, atoms, tuple(parts))


def normalize(mu: MeasureND) -> MeasureND:
    """
    Merge parts lying on the same flat locus onto a common grid and sum their
    densities, so coincident parts of opposite sign cancel.
    """
    groups: Dict[Tuple[Tuple[int, ...], Point], List[BoxPart]] = {}
    for part in mu.parts:
        groups.setdefault(part.key(), []).append(part)
    parts: List[BoxPart] = []
    for members in groups.values():
        if len(members) == 1:
            parts.append(members[0])
            continue
        coords: Dict[int, set] = {}
        for part in members:
            for i in part.free_axes:
                coords.setdefault(i, set()).update((part.lo[i], part.hi[i]))
        cells: Dict[Tuple[Point, Point], ScalarForm] = {}
        for part in members:
            for cell in part.split(coords):
                key = (cell.lo, cell.hi)
                if key in cells:
                    cells[key] = cells[key].plus(cell.density)
                else:
                    cells[key] = cell.density
        parts.extend(BoxPart(lo, hi, density) for (lo, hi), density in cells.items())
    return MeasureND(mu.dimension, mu.atoms, tuple(parts))


def integrate(
    f: Optional[Callable[[np.ndarray], float]],
    mu: MeasureND,
    box: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
    splits: Optional[Dict[int, Iterable[float]]] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """
    ∫ f dμ, with f = None meaning the constant 1.

    Args:
        f: Integrand on R^N
        mu: Measure
        box: Closed box outside which f vanishes (parts are clipped to it)
        splits: Per-axis coordinates where f is not smooth
        integrator: Cubature engine (a fresh one if None)

    Returns:
        Value of the integral
    """
    integrator = integrator or BoxIntegrator()
    if box is not None:
        mu = restrict(mu, box[0], box[1], closed=True)
    total = 0.0
    for x, w in mu.atoms:
        total += w * (1.0 if f is None else float(f(np.asarray(x))))
    for part in mu.parts:
        density = part.density
        if f is None and density.constant is not None:
            total += density.constant * part.size()
            continue
        merged = density.split_map()
        for axis, coords in (splits or {}).items():
            merged.setdefault(axis, []).extend(coords)
        if f is None:
            integrand = density
        else:
            integrand = lambda x, d=density: f(x) * d(x)  # noqa: E731
        total += integrator.integrate(
            integrand, part.lo, part.hi, merged, density.singular_points
        )
    return total


def total_variation(
    mu: MeasureND,
    window: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """|μ|(window), the open window, or |μ|(R^N) when None."""
    if window is not None:
        mu = restrict(mu, window[0], window[1])
    mu = normalize(mu)
    absolute = MeasureND(
        mu.dimension,
        tuple((x, abs(w)) for x, w in mu.atoms),
        tuple(p.with_density(p.density.absolute()) for p in mu.parts),
    )
    return integrate(None, absolute, integrator=integrator)


def mass(
    mu: MeasureND,
    window: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """μ(window), the open window, or μ(R^N) when None."""
    if window is not None:
        mu = restrict(mu, window[0], window[1])
    return integrate(None, mu, integrator=integrator)


def distance(mu: MeasureND, nu: MeasureND, integrator: Optional[BoxIntegrator] = None) -> float:
    """|μ − ν|(R^N)."""
    return total_variation(mu - nu, integrator=integrator)


def is_close(mu: MeasureND, nu: MeasureND, tol: float = 1e-12) -> bool:
    return distance(mu, nu) <= tol
