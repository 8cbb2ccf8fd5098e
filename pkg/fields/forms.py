"""
Scalar and vector closed forms on R^N with their non-smooth loci.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

Point = Tuple[float, ...]


def _merge_splits(*groups: Iterable[Tuple[int, Tuple[float, ...]]]) -> Tuple[Tuple[int, Tuple[float, ...]], ...]:
    merged: Dict[int, set] = {}
    for group in groups:
        for axis, coords in group:
            merged.setdefault(axis, set()).update(float(c) for c in coords)
    return tuple((axis, tuple(sorted(coords))) for axis, coords in sorted(merged.items()))


@dataclass(frozen=True)
class ScalarForm:
    """
    A scalar function with a label, the coordinates where it is not smooth
    and the points where it may blow up.

    When `constant` is set the form is that constant everywhere, which lets
    the measure code integrate it exactly and detect cancellations.
    """

    label: str
    fn: Callable[[np.ndarray], float] = field(compare=False, repr=False)
    splits: Tuple[Tuple[int, Tuple[float, ...]], ...] = ()
    singular_points: Tuple[Point, ...] = ()
    constant: Optional[float] = None

    @classmethod
    def of_constant(cls, c: float) -> "ScalarForm":
        c = float(c)
        return cls(label=f"{c:g}", fn=lambda x, c=c: c, constant=c)

    def __call__(self, x: Sequence[float]) -> float:
        if self.constant is not None:
            return self.constant
        return float(self.fn(np.asarray(x, dtype=float)))

    def is_zero(self) -> bool:
        return self.constant == 0.0

    def split_map(self) -> Dict[int, List[float]]:
        return {axis: list(coords) for axis, coords in self.splits}

    def scale(self, c: float) -> "ScalarForm":
        c = float(c)
        if self.constant is not None:
            return ScalarForm.of_constant(c * self.constant)
        if c == 0:
            return ScalarForm.of_constant(0.0)
        return ScalarForm(
            f"{c:g}*({self.label})",
            lambda x, f=self.fn, c=c: c * f(x),
            self.splits,
            self.singular_points,
        )

    def plus(self, other: "ScalarForm") -> "ScalarForm":
        if self.constant is not None and other.constant is not None:
            return ScalarForm.of_constant(self.constant + other.constant)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return ScalarForm(
            f"({self.label})+({other.label})",
            lambda x, f=self, g=other: f(x) + g(x),
            _merge_splits(self.splits, other.splits),
            tuple(dict.fromkeys(self.singular_points + other.singular_points)),
        )

    def times(self, other: "ScalarForm") -> "ScalarForm":
        if self.constant is not None:
            return other.scale(self.constant)
        if other.constant is not None:
            return self.scale(other.constant)
        return ScalarForm(
            f"({self.label})*({other.label})",
            lambda x, f=self, g=other: f(x) * g(x),
            _merge_splits(self.splits, other.splits),
            tuple(dict.fromkeys(self.singular_points + other.singular_points)),
        )

    def absolute(self) -> "ScalarForm":
        if self.constant is not None:
            return ScalarForm.of_constant(abs(self.constant))
        return ScalarForm(
            f"|{self.label}|",
            lambda x, f=self: abs(f(x)),
            self.splits,
            self.singular_points,
        )


@dataclass(frozen=True)
class VectorForm:
    """
    A vector field x ↦ A(x) ∈ R^N given in closed form.

    jump_planes lists the hyperplanes {x_axis = offset} across which A jumps;
    one-sided values there are read just off the plane. With
    `piecewise_constant` the field is constant between its jump planes.
    """

    label: str
    dimension: int
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    jump_planes: Tuple[Tuple[int, float], ...] = ()
    singular_points: Tuple[Point, ...] = ()
    splits: Tuple[Tuple[int, Tuple[float, ...]], ...] = ()
    piecewise_constant: bool = False

    def __call__(self, x: Sequence[float]) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if any(np.array_equal(x, p) for p in self.singular_points):
            return np.zeros(self.dimension)
        return np.asarray(self.fn(x), dtype=float)

    def all_splits(self) -> Tuple[Tuple[int, Tuple[float, ...]], ...]:
        planes = [(axis, (offset,)) for axis, offset in self.jump_planes]
        points = [
            (axis, (p[axis],)) for p in self.singular_points for axis in range(self.dimension)
        ]
        return _merge_splits(self.splits, planes, points)

    def jumps_across(self, axis: int, offset: float) -> bool:
        return any(a == axis and o == offset for a, o in self.jump_planes)

    def one_sided(self, x: Sequence[float], axis: int, side: int) -> np.ndarray:
        """Value of A on the `side` (±1) of the plane {x_axis = x[axis]}."""
        x = np.array(x, dtype=float)
        if not self.jumps_across(axis, float(x[axis])):
            return self(x)
        x[axis] += side * 1e-12 * max(1.0, abs(x[axis]))
        return self(x)

    def component(self, j: int) -> ScalarForm:
        return ScalarForm(
            f"{self.label}[{j}]",
            lambda x, f=self, j=j: float(f(x)[j]),
            self.all_splits(),
            self.singular_points,
        )

    def norm(self) -> ScalarForm:
        return ScalarForm(
            f"|{self.label}|",
            lambda x, f=self: float(np.linalg.norm(f(x))),
            self.all_splits(),
            self.singular_points,
        )
