"""
Finite unions of axis-aligned open boxes and step functions on them.

For this class of sets the measure-theoretic notions are combinatorial: the
Lebesgue density of E at x is the fraction of the 2^N orthants at x that E
fills, so E¹, E⁰ and ∂*E are read off by probing one point per orthant.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BadParams
from measures.selector import LambdaSelector

Point = Tuple[float, ...]
Box = Tuple[Point, Point]

INTERIOR = "interior"
EXTERIOR = "exterior"
BOUNDARY = "boundary"

PROBE_SCALE = 1e-9


def _point(x: Iterable[Any]) -> Point:
    return tuple(float(c) for c in x)


def _in_open_box(x: Sequence[float], box: Box) -> bool:
    lo, hi = box
    return all(a < c < b for a, c, b in zip(lo, x, hi))


def representative_point(lo: Sequence[float], hi: Sequence[float]) -> Point:
    """A point inside the open box, the centre when it is bounded."""
    out = []
    for a, b in zip(lo, hi):
        if math.isinf(a) and math.isinf(b):
            out.append(0.0)
        elif math.isinf(a):
            out.append(b - 1.0)
        elif math.isinf(b):
            out.append(a + 1.0)
        else:
            out.append(0.5 * (a + b))
    return tuple(out)


def probe_offset(x: Sequence[float], coords: Dict[int, Sequence[float]]) -> float:
    """Offset for orthant probes at x: small against |x| and every coordinate gap."""
    delta = PROBE_SCALE * max([1.0] + [abs(c) for c in x])
    for values in coords.values():
        finite = sorted({c for c in values if math.isfinite(c)})
        gaps = [b - a for a, b in zip(finite, finite[1:])]
        if gaps:
            delta = min(delta, 0.25 * min(gaps))
    return delta


def orthant_probes(x: Sequence[float], delta: float) -> Iterator[np.ndarray]:
    base = np.asarray(x, dtype=float)
    for signs in itertools.product((-1.0, 1.0), repeat=base.size):
        yield base + delta * np.asarray(signs)


class BoxGrid:
    """
    The tensor grid of a closed window cut at the given per-axis coordinates.
    """

    def __init__(self, lo: Sequence[float], hi: Sequence[float], coords: Dict[int, Iterable[float]]):
        self.lo = _point(lo)
        self.hi = _point(hi)
        self.axes: List[List[float]] = []
        for i, (a, b) in enumerate(zip(self.lo, self.hi)):
            cuts = {a, b}
            cuts.update(float(c) for c in coords.get(i, ()) if a < c < b)
            self.axes.append(sorted(cuts))

    @property
    def dimension(self) -> int:
        return len(self.lo)

    def cells(self) -> Iterator[Box]:
        """Volume cells."""
        ranges = [range(len(g) - 1) for g in self.axes]
        for index in itertools.product(*ranges):
            lo = tuple(self.axes[i][k] for i, k in enumerate(index))
            hi = tuple(self.axes[i][k + 1] for i, k in enumerate(index))
            yield lo, hi

    def face_cells(self, axis: int, include_window: bool = False) -> Iterator[Box]:
        """Faces of the grid on planes {x_axis = c}; interior planes only unless asked."""
        planes = self.axes[axis] if include_window else self.axes[axis][1:-1]
        others = [i for i in range(self.dimension) if i != axis]
        ranges = [range(len(self.axes[i]) - 1) for i in others]
        for c in planes:
            for index in itertools.product(*ranges):
                lo = [c] * self.dimension
                hi = [c] * self.dimension
                for i, k in zip(others, index):
                    lo[i], hi[i] = self.axes[i][k], self.axes[i][k + 1]
                yield tuple(lo), tuple(hi)

    def coordinate_map(self) -> Dict[int, List[float]]:
        return {i: list(g) for i, g in enumerate(self.axes)}


@dataclass(frozen=True)
class BoxSet:
    """E = union of open boxes; bounds may be infinite (half-spaces, slabs)."""

    dimension: int
    boxes: Tuple[Box, ...] = ()

    def __post_init__(self):
        boxes = []
        for lo, hi in self.boxes:
            lo, hi = _point(lo), _point(hi)
            if len(lo) != self.dimension or len(hi) != self.dimension:
                raise BadParams(f"box {lo}..{hi} is not in R^{self.dimension}")
            if any(b <= a for a, b in zip(lo, hi)):
                raise BadParams(f"empty box {lo}..{hi}")
            boxes.append((lo, hi))
        object.__setattr__(self, "boxes", tuple(boxes))

    @classmethod
    def empty(cls, dimension: int) -> "BoxSet":
        return cls(dimension)

    @classmethod
    def box(cls, lo: Sequence[float], hi: Sequence[float]) -> "BoxSet":
        return cls(len(lo), ((_point(lo), _point(hi)),))

    @classmethod
    def cube(cls, a: float, b: float, dimension: int) -> "BoxSet":
        return cls.box((a,) * dimension, (b,) * dimension)

    @classmethod
    def half_space(cls, dimension: int, axis: int, offset: float, sign: int = 1) -> "BoxSet":
        """{x_axis > offset} for sign = +1, {x_axis < offset} for sign = −1."""
        lo, hi = [-math.inf] * dimension, [math.inf] * dimension
        if sign > 0:
            lo[axis] = offset
        else:
            hi[axis] = offset
        return cls.box(lo, hi)

    def union(self, other: "BoxSet") -> "BoxSet":
        if other.dimension != self.dimension:
            raise BadParams("sets live in different dimensions")
        return BoxSet(self.dimension, self.boxes + other.boxes)

    def contains(self, x: Sequence[float]) -> bool:
        return any(_in_open_box(x, box) for box in self.boxes)

    def coordinates(self, axis: int) -> List[float]:
        coords = set()
        for lo, hi in self.boxes:
            for c in (lo[axis], hi[axis]):
                if math.isfinite(c):
                    coords.add(c)
        return sorted(coords)

    def coordinate_map(self) -> Dict[int, List[float]]:
        return {i: self.coordinates(i) for i in range(self.dimension)}

    def density(self, x: Sequence[float]) -> float:
        """Lebesgue density θ_E(x) ∈ {k / 2^N}."""
        delta = probe_offset(x, self.coordinate_map())
        hits = [self.contains(p) for p in orthant_probes(x, delta)]
        return sum(hits) / len(hits)

    def classify(self, x: Sequence[float]) -> str:
        theta = self.density(x)
        if theta == 1.0:
            return INTERIOR
        if theta == 0.0:
            return EXTERIOR
        return BOUNDARY

    def is_bounded(self) -> bool:
        return all(math.isfinite(c) for lo, hi in self.boxes for c in lo + hi)

    def is_compactly_inside(self, lo: Sequence[float], hi: Sequence[float]) -> bool:
        """Ē ⊂ open box (lo, hi)."""
        return all(
            a < blo and bhi < b
            for box_lo, box_hi in self.boxes
            for a, blo, bhi, b in zip(lo, box_lo, box_hi, hi)
        )

    def grid(self, window: Box, extra: Optional[Dict[int, Iterable[float]]] = None) -> BoxGrid:
        coords = self.coordinate_map()
        for axis, values in (extra or {}).items():
            coords[axis] = list(coords.get(axis, [])) + list(values)
        return BoxGrid(window[0], window[1], coords)

    def cells(self, window: Box) -> List[Box]:
        """Disjoint grid cells of the window making up E ∩ window."""
        return [
            cell
            for cell in self.grid(window).cells()
            if self.contains(representative_point(*cell))
        ]

    def disjoint(self) -> "BoxSet":
        """The same set as pairwise disjoint boxes (overlaps resolved on the coordinate grid)."""
        if len(self.boxes) <= 1:
            return self
        coords = {i: [-math.inf, math.inf] + self.coordinates(i) for i in range(self.dimension)}
        axes = [sorted(set(coords[i])) for i in range(self.dimension)]
        out = []
        for index in itertools.product(*[range(len(a) - 1) for a in axes]):
            lo = tuple(axes[i][k] for i, k in enumerate(index))
            hi = tuple(axes[i][k + 1] for i, k in enumerate(index))
            if self.contains(representative_point(lo, hi)):
                out.append((lo, hi))
        return BoxSet(self.dimension, tuple(out))

    def complement(self, window: Box) -> "BoxSet":
        """window ∖ E as grid cells."""
        cells = [
            cell
            for cell in self.grid(window).cells()
            if not self.contains(representative_point(*cell))
        ]
        return BoxSet(self.dimension, tuple(cells))

    def lebesgue_measure(self, window: Optional[Box] = None) -> float:
        if window is None:
            if not self.is_bounded():
                return math.inf
            window = self.bounding_box()
        return sum(float(np.prod(np.subtract(hi, lo))) for lo, hi in self.cells(window))

    def intersection_measure(self, other: "BoxSet", window: Optional[Box] = None) -> float:
        """L^N(E ∩ F ∩ window)."""
        if window is None:
            both = self.union(other)
            if not both.is_bounded():
                return math.inf
            window = both.bounding_box()
        grid = BoxGrid(window[0], window[1], _merge(self.coordinate_map(), other.coordinate_map()))
        total = 0.0
        for lo, hi in grid.cells():
            x = representative_point(lo, hi)
            if self.contains(x) and other.contains(x):
                total += float(np.prod(np.subtract(hi, lo)))
        return total

    def bounding_box(self) -> Box:
        if not self.boxes:
            return (0.0,) * self.dimension, (0.0,) * self.dimension
        lo = tuple(min(b[0][i] for b in self.boxes) for i in range(self.dimension))
        hi = tuple(max(b[1][i] for b in self.boxes) for i in range(self.dimension))
        return lo, hi

    def boundary_faces(self, window: Box) -> List[Tuple[Box, int, int]]:
        """
        Face cells of ∂*E inside the open window, as (face, axis, sign) with
        the outward unit normal sign·e_axis.
        """
        grid = self.grid(window)
        out = []
        for axis in range(self.dimension):
            for face in grid.face_cells(axis):
                centre = np.asarray(representative_point(*face))
                delta = probe_offset(centre, grid.coordinate_map())
                minus, plus = centre.copy(), centre.copy()
                minus[axis] -= delta
                plus[axis] += delta
                inside_minus, inside_plus = self.contains(minus), self.contains(plus)
                if inside_minus != inside_plus:
                    out.append((face, axis, 1 if inside_minus else -1))
        return out

    def boundary_area(self, window: Box) -> float:
        """H^{N−1}(∂*E ∩ window)."""
        return sum(_face_size(face, axis) for face, axis, _ in self.boundary_faces(window))

    def indicator(self, value: float = 1.0) -> "StepFunctionND":
        return StepFunctionND(
            self.dimension, tuple((value, box) for box in self.disjoint().boxes)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "boxes": [{"lo": list(lo), "hi": list(hi)} for lo, hi in self.boxes],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoxSet":
        boxes = []
        for entry in data.get("boxes", []):
            boxes.append((_point(entry["lo"]), _point(entry["hi"])))
        for entry in data.get("half_spaces", []):
            boxes.extend(
                cls.half_space(
                    int(data["dimension"]), int(entry["axis"]), float(entry["offset"]), int(entry.get("sign", 1))
                ).boxes
            )
        return cls(int(data["dimension"]), tuple(boxes))


def _merge(*maps: Dict[int, List[float]]) -> Dict[int, List[float]]:
    out: Dict[int, List[float]] = {}
    for m in maps:
        for axis, coords in m.items():
            out.setdefault(axis, []).extend(coords)
    return out


def _face_size(face: Box, axis: int) -> float:
    lo, hi = face
    return float(np.prod([hi[i] - lo[i] for i in range(len(lo)) if i != axis]))


@dataclass(frozen=True)
class StepFunctionND:
    """u = Σ c_k χ_{box_k}; values add where boxes overlap."""

    dimension: int
    terms: Tuple[Tuple[float, Box], ...] = ()

    def __post_init__(self):
        terms = []
        for c, (lo, hi) in self.terms:
            lo, hi = _point(lo), _point(hi)
            if len(lo) != self.dimension or any(b <= a for a, b in zip(lo, hi)):
                raise BadParams(f"bad step box {lo}..{hi}")
            terms.append((float(c), (lo, hi)))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_cells(cls, values: Iterable[Tuple[float, Box]]) -> "StepFunctionND":
        values = list(values)
        if not values:
            raise BadParams("a step function needs at least one cell")
        return cls(len(values[0][1][0]), tuple(values))

    def value(self, x: Sequence[float]) -> float:
        return sum(c for c, box in self.terms if _in_open_box(x, box))

    __call__ = value

    def coordinates(self, axis: int) -> List[float]:
        coords = set()
        for _, (lo, hi) in self.terms:
            for c in (lo[axis], hi[axis]):
                if math.isfinite(c):
                    coords.add(c)
        return sorted(coords)

    def coordinate_map(self) -> Dict[int, List[float]]:
        return {i: self.coordinates(i) for i in range(self.dimension)}

    def limits(self, x: Sequence[float]) -> Tuple[float, float]:
        """(u⁻(x), u⁺(x)) as the min and max over the orthants at x."""
        delta = probe_offset(x, self.coordinate_map())
        values = [self.value(p) for p in orthant_probes(x, delta)]
        return min(values), max(values)

    def representative(self, x: Sequence[float], lam: LambdaSelector, on_face: bool = False) -> float:
        """
        u^λ(x) = (1 − λ(x))u⁻(x) + λ(x)u⁺(x). On faces λ is the region
        constant; point overrides apply only at isolated points.
        """
        lower, upper = self.limits(x)
        if lower == upper:
            return lower
        t = float(lam.region_value(tuple(x)) if on_face else lam.value(tuple(x)))
        return (1.0 - t) * lower + t * upper

    def scale(self, c: float) -> "StepFunctionND":
        return StepFunctionND(self.dimension, tuple((c * v, box) for v, box in self.terms))

    def plus(self, other: "StepFunctionND") -> "StepFunctionND":
        if other.dimension != self.dimension:
            raise BadParams("step functions live in different dimensions")
        return StepFunctionND(self.dimension, self.terms + other.terms)

    def cell_values(self, window: Box) -> List[Tuple[Box, float]]:
        grid = BoxGrid(window[0], window[1], self.coordinate_map())
        return [(cell, self.value(representative_point(*cell))) for cell in grid.cells()]

    def levels(self, window: Box) -> List[float]:
        """Distinct values taken on the window."""
        return sorted({v for _, v in self.cell_values(window)})

    def superlevel(self, t: float, window: Box) -> BoxSet:
        """{u > t} ∩ window as grid cells."""
        cells = tuple(cell for cell, v in self.cell_values(window) if v > t)
        return BoxSet(self.dimension, cells)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "terms": [{"value": c, "lo": list(lo), "hi": list(hi)} for c, (lo, hi) in self.terms],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StepFunctionND":
        return cls(
            int(data["dimension"]),
            tuple((float(t["value"]), (_point(t["lo"]), _point(t["hi"]))) for t in data.get("terms", [])),
        )
