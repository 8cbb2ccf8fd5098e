"""
Open intervals and finite Borel sets on the line.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from core.errors import BadParams


@dataclass(frozen=True, order=True)
class Interval1D:
    """Open interval (lo, hi) with finite endpoints."""

    lo: Any
    hi: Any

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise BadParams(f"interval endpoints must be finite: ({self.lo}, {self.hi})")
        if not self.lo < self.hi:
            raise BadParams(f"empty interval ({self.lo}, {self.hi})")

    @property
    def length(self) -> float:
        return float(self.hi - self.lo)

    @property
    def midpoint(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2.0

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def contains_closed(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def intersect(self, other: "Interval1D") -> Optional["Interval1D"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return Interval1D(lo, hi) if lo < hi else None

    def to_dict(self) -> List[Any]:
        return [_plain(self.lo), _plain(self.hi)]

    @classmethod
    def from_dict(cls, data: Iterable[Any]) -> "Interval1D":
        lo, hi = list(data)
        return cls(_number(lo), _number(hi))


@dataclass(frozen=True)
class BorelSet1D:
    """Finite union of open intervals and points, kept normalized."""

    intervals: Tuple[Interval1D, ...] = ()
    points: Tuple[float, ...] = ()

    def __post_init__(self):
        intervals = sorted(self.intervals)
        points = sorted(set(self.points))
        merged: List[Interval1D] = []
        for interval in intervals:
            if merged:
                last = merged[-1]
                touching = interval.lo == last.hi and last.hi in points
                if interval.lo < last.hi or touching:
                    merged[-1] = Interval1D(last.lo, max(last.hi, interval.hi))
                    continue
            merged.append(interval)
        kept = [p for p in points if not any(i.contains(p) for i in merged)]
        object.__setattr__(self, "intervals", tuple(merged))
        object.__setattr__(self, "points", tuple(kept))

    @classmethod
    def empty(cls) -> "BorelSet1D":
        return cls()

    @classmethod
    def interval(cls, lo: float, hi: float) -> "BorelSet1D":
        return cls((Interval1D(lo, hi),))

    @classmethod
    def closed(cls, lo: float, hi: float) -> "BorelSet1D":
        return cls((Interval1D(lo, hi),), (lo, hi))

    @classmethod
    def point(cls, x: float) -> "BorelSet1D":
        return cls((), (x,))

    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def contains(self, x: float) -> bool:
        return x in self.points or any(i.contains(x) for i in self.intervals)

    def union(self, other: "BorelSet1D") -> "BorelSet1D":
        return BorelSet1D(self.intervals + other.intervals, self.points + other.points)

    def intersect(self, other: "BorelSet1D") -> "BorelSet1D":
        intervals = []
        for a in self.intervals:
            for b in other.intervals:
                c = a.intersect(b)
                if c is not None:
                    intervals.append(c)
        points = [p for p in self.points if other.contains(p)]
        points += [p for p in other.points if self.contains(p)]
        return BorelSet1D(tuple(intervals), tuple(points))

    def complement(self, domain: Interval1D) -> "BorelSet1D":
        """domain minus the set."""
        cuts = sorted(
            {domain.lo, domain.hi}
            | {c for i in self.intervals for c in (i.lo, i.hi) if domain.lo < c < domain.hi}
            | {p for p in self.points if domain.contains(p)}
        )
        intervals = []
        points = []
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2
            if not self.contains(mid):
                intervals.append(Interval1D(lo, hi))
        for c in cuts[1:-1]:
            if not self.contains(c):
                points.append(c)
        return BorelSet1D(tuple(intervals), tuple(points))

    def lebesgue_measure(self) -> float:
        return sum(i.length for i in self.intervals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "intervals": [i.to_dict() for i in self.intervals],
            "points": [_plain(p) for p in self.points],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BorelSet1D":
        return cls(
            tuple(Interval1D.from_dict(i) for i in data.get("intervals", [])),
            tuple(_number(p) for p in data.get("points", [])),
        )


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    return value


def _number(value: Any) -> Any:
    if isinstance(value, str):
        return Fraction(value)
    return value
