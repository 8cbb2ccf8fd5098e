"""
Divergence-measure fields on a window of R^N.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BadParams

from .forms import Point, ScalarForm, VectorForm
from .measure_nd import BoxPart, MeasureND

Window = Tuple[Point, Point]


@dataclass(frozen=True)
class SegmentPart:
    """weight · H¹ ⌞ {through + t e_axis : lo < t < hi}, a measure-valued component of A."""

    axis: int
    through: Point
    lo: float
    hi: float
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "through", tuple(float(c) for c in self.through))
        if self.hi <= self.lo:
            raise BadParams(f"empty segment ({self.lo}, {self.hi})")

    def point(self, t: float) -> np.ndarray:
        x = np.array(self.through, dtype=float)
        x[self.axis] = t
        return x

    def as_box_part(self) -> BoxPart:
        lo, hi = list(self.through), list(self.through)
        lo[self.axis], hi[self.axis] = self.lo, self.hi
        return BoxPart(tuple(lo), tuple(hi), ScalarForm.of_constant(self.weight))


@dataclass(frozen=True)
class FieldND:
    """
    A ∈ DM(Ω) given by an absolutely continuous part, segment parts (each
    carried by the component along its axis) and its divergence measure.

    The divergence is declared, not derived; `divergence_selftest` checks it
    against the weak identity ∫φ d div A = −∫∇φ·dA.
    """

    name: str
    dimension: int
    window: Window
    divergence: MeasureND
    ac: Optional[VectorForm] = None
    segments: Tuple[SegmentPart, ...] = ()
    essential_sup: Optional[float] = None
    closed_form_traces: bool = True
    probe: Optional[str] = None
    params: Tuple[Tuple[str, Any], ...] = field(default=(), compare=False)
    description: str = ""

    def __post_init__(self):
        lo, hi = self.window
        lo, hi = tuple(float(c) for c in lo), tuple(float(c) for c in hi)
        if len(lo) != self.dimension or len(hi) != self.dimension:
            raise BadParams(f"window {self.window} is not in R^{self.dimension}")
        if any(b <= a for a, b in zip(lo, hi)):
            raise BadParams(f"empty window {self.window}")
        object.__setattr__(self, "window", (lo, hi))
        if self.divergence.dimension != self.dimension:
            raise BadParams("divergence lives in another dimension")

    @property
    def summable(self) -> bool:
        """|A| ≪ L^N, i.e. A has no singular (segment) parts."""
        return not self.segments

    @property
    def param_map(self) -> Dict[str, Any]:
        return dict(self.params)

    def value(self, x: Sequence[float]) -> np.ndarray:
        """Density of the absolutely continuous part at x."""
        if self.ac is None:
            return np.zeros(self.dimension)
        return self.ac(x)

    def one_sided(self, x: Sequence[float], axis: int, side: int) -> np.ndarray:
        if self.ac is None:
            return np.zeros(self.dimension)
        return self.ac.one_sided(x, axis, side)

    def jumps_across(self, axis: int, offset: float) -> bool:
        return self.ac is not None and self.ac.jumps_across(axis, offset)

    def singular_points(self) -> Tuple[Point, ...]:
        return self.ac.singular_points if self.ac is not None else ()

    def splits(self) -> Dict[int, List[float]]:
        """Coordinates where A or div A is not smooth, per axis."""
        out: Dict[int, set] = {i: set() for i in range(self.dimension)}
        if self.ac is not None:
            for axis, coords in self.ac.all_splits():
                out[axis].update(coords)
        for segment in self.segments:
            for i, c in enumerate(segment.through):
                if i != segment.axis:
                    out[i].add(c)
            out[segment.axis].update((segment.lo, segment.hi))
        for x, _ in self.divergence.atoms:
            for i, c in enumerate(x):
                out[i].add(c)
        for part in self.divergence.parts:
            for i in range(self.dimension):
                out[i].update((part.lo[i], part.hi[i]))
            for axis, coords in part.density.splits:
                out[axis].update(coords)
        lo, hi = self.window
        return {
            i: sorted(c for c in coords if lo[i] < c < hi[i])
            for i, coords in out.items()
        }

    def components(self) -> Tuple[MeasureND, ...]:
        """A_j as measures on the window, one per axis."""
        lo, hi = self.window
        out = []
        for j in range(self.dimension):
            parts = []
            if self.ac is not None:
                parts.append(BoxPart(lo, hi, self.ac.component(j)))
            parts.extend(s.as_box_part() for s in self.segments if s.axis == j)
            out.append(MeasureND(self.dimension, (), tuple(parts)))
        return tuple(out)

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "window": [list(self.window[0]), list(self.window[1])],
            "params": {k: _plain(v) for k, v in self.params},
            "essential_sup": self.essential_sup,
            "summable": self.summable,
            "closed_form_traces": self.closed_form_traces,
            "divergence": self.divergence.to_dict(),
            "description": self.description,
        }


def _plain(value: Any) -> Any:
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, tuple):
        return list(value)
    return value
