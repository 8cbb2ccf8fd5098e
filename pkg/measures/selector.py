"""
Borel selectors λ: Ω → [0, 1] as piecewise-constant regions plus point overrides.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from core.errors import BadParams

from .pieces import Number, as_number
from .sets import Interval1D, _plain

Point = Tuple[float, ...]
Region = Tuple[Point, Point]

_OVERRIDE_TOL = 1e-12


def _as_point(x: Union[float, Sequence[float]]) -> Point:
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return (x,)


def _as_region(region: Any) -> Region:
    if isinstance(region, Interval1D):
        return (region.lo,), (region.hi,)
    lo, hi = region
    return _as_point(lo), _as_point(hi)


def _check_unit(value: Number) -> Number:
    value = as_number(value)
    if not 0 <= value <= 1:
        raise BadParams(f"λ value {value} outside [0, 1]")
    return value


@dataclass(frozen=True)
class LambdaSelector:
    """
    λ(x): the override at x if any, else the value of the first open region
    containing x, else the default.
    """

    regions: Tuple[Tuple[Region, Number], ...] = ()
    overrides: Tuple[Tuple[Point, Number], ...] = ()
    default: Number = 0

    def __post_init__(self):
        regions = tuple((_as_region(r), _check_unit(v)) for r, v in self.regions)
        overrides = tuple((_as_point(p), _check_unit(v)) for p, v in self.overrides)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "overrides", overrides)
        object.__setattr__(self, "default", _check_unit(self.default))

    @classmethod
    def constant(cls, t: Number) -> "LambdaSelector":
        return cls(default=t)

    @classmethod
    def at_point(cls, x: Union[float, Sequence[float]], value: Number, default: Number = 0) -> "LambdaSelector":
        return cls(overrides=((x, value),), default=default)

    @classmethod
    def indicator_of_intervals(
        cls, intervals: Iterable[Tuple[float, float]], axis: int = 0, dimension: int = 1
    ) -> "LambdaSelector":
        """λ = χ_F(x_axis) for F a finite union of open intervals."""
        regions = []
        for lo, hi in intervals:
            region_lo = [-1e300] * dimension
            region_hi = [1e300] * dimension
            region_lo[axis], region_hi[axis] = lo, hi
            regions.append(((tuple(region_lo), tuple(region_hi)), 1))
        return cls(regions=tuple(regions), default=0)

    def is_constant(self) -> bool:
        return not self.regions and not self.overrides

    def override_at(self, x: Union[float, Sequence[float]]) -> Optional[Number]:
        point = _as_point(x)
        for p, v in self.overrides:
            if len(p) == len(point) and all(
                abs(float(a) - float(b)) <= _OVERRIDE_TOL for a, b in zip(p, point)
            ):
                return v
        return None

    def region_value(self, x: Union[float, Sequence[float]]) -> Number:
        """Region constant at x, ignoring point overrides."""
        point = _as_point(x)
        for (lo, hi), v in self.regions:
            if len(lo) == len(point) and all(
                a < c < b for a, c, b in zip(lo, point, hi)
            ):
                return v
        return self.default

    def value(self, x: Union[float, Sequence[float]]) -> Number:
        override = self.override_at(x)
        return override if override is not None else self.region_value(x)

    __call__ = value

    def complement(self) -> "LambdaSelector":
        """1 − λ."""
        return LambdaSelector(
            tuple((r, 1 - v) for r, v in self.regions),
            tuple((p, 1 - v) for p, v in self.overrides),
            1 - self.default,
        )

    def boundaries(self, axis: int) -> List[float]:
        """Region edges along an axis."""
        edges = set()
        for (lo, hi), _ in self.regions:
            if axis < len(lo):
                for c in (lo[axis], hi[axis]):
                    if abs(float(c)) < 1e299:
                        edges.add(float(c))
        return sorted(edges)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "regions": [
                {"lo": [_plain(c) for c in lo], "hi": [_plain(c) for c in hi], "value": _plain(v)}
                for (lo, hi), v in self.regions
            ],
            "overrides": [
                {"point": [_plain(c) for c in p], "value": _plain(v)}
                for p, v in self.overrides
            ],
            "default": _plain(self.default),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LambdaSelector":
        regions = tuple(
            ((tuple(r["lo"]), tuple(r["hi"])), as_number(r["value"]))
            for r in data.get("regions", [])
        )
        overrides = tuple(
            (tuple(o["point"]), as_number(o["value"])) for o in data.get("overrides", [])
        )
        return cls(regions, overrides, as_number(data.get("default", 0)))
