"""
Piecewise analytic scalar functions on an open interval.
"""

import bisect
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from core.errors import BadParams, UnsupportedPiece

from .pieces import Number, Piece, Poly, as_number, piece_from_dict
from .sets import BorelSet1D, Interval1D, _plain


@dataclass(frozen=True)
class PiecewiseFunction1D:
    """
    u given by breakpoints b₁ < … < b_m inside the domain and one analytic
    piece per open sub-interval. Point values at breakpoints are optional.

    Singular points of a piece that fall inside its sub-interval are promoted
    to breakpoints on construction, so pieces are finite on open sub-intervals.
    """

    domain: Interval1D
    breakpoints: Tuple[Number, ...]
    pieces: Tuple[Piece, ...]
    point_values: Tuple[Tuple[Number, Number], ...] = field(default=())

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise BadParams("need exactly one piece per sub-interval")
        cuts = [self.domain.lo, *self.breakpoints, self.domain.hi]
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise BadParams(f"breakpoints not increasing inside {self.domain}")
        breakpoints: List[Number] = []
        pieces: List[Piece] = []
        for k, piece in enumerate(self.pieces):
            lo, hi = cuts[k], cuts[k + 1]
            inner = sorted(p for p in piece.singular_points() if lo < p < hi)
            for p in inner:
                pieces.append(piece)
                breakpoints.append(p)
            pieces.append(piece)
            if k < len(self.breakpoints):
                breakpoints.append(self.breakpoints[k])
        object.__setattr__(self, "breakpoints", tuple(breakpoints))
        object.__setattr__(self, "pieces", tuple(pieces))
        object.__setattr__(
            self, "point_values", tuple(sorted(dict(self.point_values).items()))
        )

    @classmethod
    def from_piece(cls, domain: Interval1D, piece: Piece) -> "PiecewiseFunction1D":
        return cls(domain, (), (piece,))

    @classmethod
    def constant(cls, domain: Interval1D, c: Number) -> "PiecewiseFunction1D":
        return cls(domain, (), (Poly.constant(c),))

    @classmethod
    def from_parts(
        cls,
        domain: Interval1D,
        parts: Sequence[Tuple[Number, Number, Piece]],
        fill: Optional[Piece] = None,
        point_values: Optional[Dict[Number, Number]] = None,
    ) -> "PiecewiseFunction1D":
        """
        Build from (lo, hi, piece) triples; gaps are filled with `fill`
        (zero by default).
        """
        fill = fill or Poly.constant(0)
        parts = sorted(parts, key=lambda p: p[0])
        breakpoints: List[Number] = []
        pieces: List[Piece] = []
        cursor = domain.lo
        for lo, hi, piece in parts:
            lo, hi = max(lo, domain.lo), min(hi, domain.hi)
            if hi <= lo:
                continue
            if lo < cursor:
                raise BadParams("overlapping parts")
            if lo > cursor:
                if pieces:
                    breakpoints.append(cursor)
                pieces.append(fill)
                breakpoints.append(lo)
            elif pieces:
                breakpoints.append(lo)
            pieces.append(piece)
            cursor = hi
        if cursor < domain.hi:
            if pieces:
                breakpoints.append(cursor)
            pieces.append(fill)
        if not pieces:
            pieces.append(fill)
        return cls(
            domain,
            tuple(breakpoints),
            tuple(pieces),
            tuple((point_values or {}).items()),
        )

    @classmethod
    def indicator(
        cls, domain: Interval1D, E: BorelSet1D, value: Number = 1
    ) -> "PiecewiseFunction1D":
        """value·χ_E; isolated points of E become point values."""
        parts = [(i.lo, i.hi, Poly.constant(value)) for i in E.intervals]
        f = cls.from_parts(domain, parts)
        values = {p: value for p in E.points if domain.contains(p)}
        for b in f.breakpoints:
            if b not in values:
                left, right = f.limits(b)
                if left == right:
                    values[b] = left
        return f.with_point_values(values)

    def with_point_values(self, values: Dict[Number, Number]) -> "PiecewiseFunction1D":
        merged = dict(self.point_values)
        merged.update(values)
        breakpoints = list(self.breakpoints)
        pieces = list(self.pieces)
        for x in values:
            if x in breakpoints or not self.domain.contains(x):
                continue
            k = bisect.bisect_left(breakpoints, x)
            breakpoints.insert(k, x)
            pieces.insert(k, pieces[k])
        return PiecewiseFunction1D(
            self.domain, tuple(breakpoints), tuple(pieces), tuple(merged.items())
        )

    def intervals(self) -> List[Interval1D]:
        cuts = [self.domain.lo, *self.breakpoints, self.domain.hi]
        return [Interval1D(a, b) for a, b in zip(cuts, cuts[1:])]

    def piece_index(self, x: Number) -> int:
        """Index of the piece whose open interval contains x (x not a breakpoint)."""
        return bisect.bisect_right(self.breakpoints, x)

    def is_breakpoint(self, x: Number) -> bool:
        k = bisect.bisect_left(self.breakpoints, x)
        return k < len(self.breakpoints) and self.breakpoints[k] == x

    def point_value(self, x: Number) -> Optional[Number]:
        return dict(self.point_values).get(x)

    def limits(self, x: Number) -> Tuple[float, float]:
        """(left limit, right limit) at x, each possibly ±inf."""
        if self.is_breakpoint(x):
            k = bisect.bisect_left(self.breakpoints, x)
            return self.pieces[k].limit(x, -1), self.pieces[k + 1].limit(x, +1)
        piece = self.pieces[self.piece_index(x)]
        return piece.limit(x, -1), piece.limit(x, +1)

    def value(self, x: Number) -> Number:
        """Value at an interior point of a piece (or a supplied point value)."""
        given = self.point_value(x)
        if given is not None:
            return given
        if self.is_breakpoint(x):
            left, right = self.limits(x)
            if left == right:
                return left
            raise BadParams(f"no value at jump point {x}")
        return self.pieces[self.piece_index(x)].value(x)

    def defined_value(self, x: Number) -> Optional[Number]:
        """Point value, or the common one-sided limit, or None at a genuine jump."""
        given = self.point_value(x)
        if given is not None:
            return given
        left, right = self.limits(x)
        if left == right:
            return left if self.is_breakpoint(x) else self.value(x)
        return None

    def pieces_on(self, interval: Interval1D) -> List[Tuple[Interval1D, Piece]]:
        """Sub-intervals of `interval` with the piece active on each."""
        out = []
        for sub, piece in zip(self.intervals(), self.pieces):
            clipped = sub.intersect(interval)
            if clipped is not None:
                out.append((clipped, piece))
        return out

    def refine(self, points: Iterable[Number]) -> "PiecewiseFunction1D":
        """Insert extra breakpoints (same piece on both sides)."""
        breakpoints = list(self.breakpoints)
        pieces = list(self.pieces)
        for x in sorted(set(points)):
            if not self.domain.contains(x) or x in breakpoints:
                continue
            k = bisect.bisect_left(breakpoints, x)
            breakpoints.insert(k, x)
            pieces.insert(k, pieces[k])
        return PiecewiseFunction1D(
            self.domain, tuple(breakpoints), tuple(pieces), self.point_values
        )

    def _combine(self, other: "PiecewiseFunction1D", op) -> "PiecewiseFunction1D":
        if self.domain != other.domain:
            raise BadParams("domains differ")
        a = self.refine(other.breakpoints)
        b = other.refine(self.breakpoints)
        pieces = tuple(op(p, q) for p, q in zip(a.pieces, b.pieces))
        return PiecewiseFunction1D(self.domain, a.breakpoints, pieces)

    def times(self, other: "PiecewiseFunction1D") -> "PiecewiseFunction1D":
        """Pointwise product; point values are dropped."""
        return self._combine(other, lambda p, q: p.times(q))

    def plus(self, other: "PiecewiseFunction1D") -> "PiecewiseFunction1D":
        return self._combine(other, lambda p, q: p.add(q))

    def scale(self, c: Number) -> "PiecewiseFunction1D":
        return PiecewiseFunction1D(
            self.domain,
            self.breakpoints,
            tuple(p.scale(c) for p in self.pieces),
            tuple((x, as_number(c) * v) for x, v in self.point_values),
        )

    def critical_levels(self) -> List[float]:
        """
        Finite values where the superlevel sets can change combinatorics:
        one-sided limits at breakpoints and domain ends, and interior extrema.
        """
        levels = set()
        for sub, piece in zip(self.intervals(), self.pieces):
            for end, side in ((sub.lo, +1), (sub.hi, -1)):
                v = piece.limit(end, side)
                if math.isfinite(v):
                    levels.add(float(v))
            try:
                slope = piece.derivative()
            except UnsupportedPiece:
                continue
            for r in slope.solve(0.0, float(sub.lo), float(sub.hi)):
                levels.add(float(piece.value(r)))
        for _, v in self.point_values:
            if math.isfinite(float(v)):
                levels.add(float(v))
        return sorted(levels)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": self.domain.to_dict(),
            "breakpoints": [_plain(b) for b in self.breakpoints],
            "pieces": [p.to_dict() for p in self.pieces],
            "point_values": [[_plain(x), _plain(v)] for x, v in self.point_values],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PiecewiseFunction1D":
        return cls(
            Interval1D.from_dict(data["domain"]),
            tuple(as_number(b) for b in data.get("breakpoints", [])),
            tuple(piece_from_dict(p) for p in data["pieces"]),
            tuple(
                (as_number(x), as_number(v)) for x, v in data.get("point_values", [])
            ),
        )
