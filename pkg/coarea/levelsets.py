"""
Superlevel sets {u > t}, their λ-representatives and the exceptional sets
N_t = {u⁻ ≤ t < u⁺} ∖ {u > t}^{1/2}.
"""

import bisect
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from core.errors import BadParams, ExceptionalPoint, UnsupportedPiece
from measures.functions import PiecewiseFunction1D
from measures.pieces import Piece
from measures.selector import LambdaSelector
from measures.sets import BorelSet1D, Interval1D
from pairing.boxes import Box, BoxSet, StepFunctionND

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelSetSlice:
    """{u > t} at one level, with the points of N_t."""

    t: float
    superlevel: Union[BorelSet1D, BoxSet]
    exceptional: Tuple[Tuple[float, ...], ...] = ()

    @property
    def is_regular(self) -> bool:
        return not self.exceptional


def _crossings(piece: Piece, t: float, lo: float, hi: float) -> List[float]:
    try:
        return piece.solve(float(t), float(lo), float(hi))
    except UnsupportedPiece as exc:
        raise BadParams(f"cannot locate the level {t} on {piece!r}: {exc}") from exc


def _side(u: PiecewiseFunction1D, x: float, side: int) -> Tuple[Piece, float, float]:
    """The piece active on one side of x and the part of its interval on that side."""
    intervals = u.intervals()
    if u.is_breakpoint(x):
        k = bisect.bisect_left(u.breakpoints, x) + (1 if side > 0 else 0)
    else:
        k = u.piece_index(x)
    interval = intervals[k]
    if side > 0:
        return u.pieces[k], x, float(interval.hi)
    return u.pieces[k], float(interval.lo), x


def side_above(u: PiecewiseFunction1D, x: float, side: int, t: float) -> bool:
    """
    Whether {u > t} fills a one-sided neighbourhood of x.

    A one-sided limit equal to t is resolved by sampling the piece between x
    and its nearest crossing of t on that side.
    """
    left, right = u.limits(x)
    limit = right if side > 0 else left
    if limit != t:
        return limit > t
    piece, lo, hi = _side(u, x, side)
    roots = [r for r in _crossings(piece, t, lo, hi) if r != x]
    if side > 0:
        near = min(roots, default=hi)
        probe = (x + near) / 2.0
    else:
        near = max(roots, default=lo)
        probe = (near + x) / 2.0
    return float(piece.value(probe)) > t


def superlevel_set(u: PiecewiseFunction1D, t: float) -> BorelSet1D:
    """{u > t} as a union of open intervals (points of measure zero dropped)."""
    cuts = {float(u.domain.lo), float(u.domain.hi)}
    cuts.update(float(b) for b in u.breakpoints)
    for sub, piece in zip(u.intervals(), u.pieces):
        cuts.update(_crossings(piece, t, sub.lo, sub.hi))
    cuts = sorted(cuts)
    spans: List[List[float]] = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2.0
        if float(u.pieces[u.piece_index(mid)].value(mid)) <= t:
            continue
        if spans and spans[-1][1] == a:
            spans[-1][1] = b
        else:
            spans.append([a, b])
    return BorelSet1D(tuple(Interval1D(a, b) for a, b in spans))


def set_sides(E: BorelSet1D, x: float) -> Tuple[bool, bool]:
    """(left neighbourhood in E, right neighbourhood in E) for a union of open intervals."""
    left = any(i.lo < x <= i.hi for i in E.intervals)
    right = any(i.lo <= x < i.hi for i in E.intervals)
    return left, right


def exceptional_set(u: PiecewiseFunction1D, t: float) -> List[float]:
    """
    N_t for a piecewise function: jump points with u⁻ ≤ t < u⁺ where {u > t}
    has density 1 instead of 1/2, i.e. the lower side approaches t from above.
    """
    points = []
    for b in u.breakpoints:
        left, right = u.limits(b)
        lower, upper = min(left, right), max(left, right)
        if not lower <= t < upper:
            continue
        density = 0.5 * side_above(u, b, -1, t) + 0.5 * side_above(u, b, +1, t)
        if density != 0.5:
            points.append(float(b))
    return points


def level_slice(u: PiecewiseFunction1D, t: float) -> LevelSetSlice:
    return LevelSetSlice(t, superlevel_set(u, t), tuple((x,) for x in exceptional_set(u, t)))


def level_set_representative(
    u: PiecewiseFunction1D, t: float, lam: LambdaSelector, x: float
) -> float:
    """
    χ^λ_{u>t}(x) = (1 − λ(x))χ_{u⁻>t}(x) + λ(x)χ_{u⁺>t}(x).

    Raises:
        ExceptionalPoint: If x ∈ N_t, where the identity above can fail
    """
    if not u.domain.contains(x):
        raise BadParams(f"{x} is outside {u.domain}")
    left, right = u.limits(x)
    lower, upper = min(left, right), max(left, right)
    if lower <= t < upper and x in exceptional_set(u, t):
        raise ExceptionalPoint(x, t)
    weight = float(lam.value(x))
    return (1.0 - weight) * float(lower > t) + weight * float(upper > t)


def exceptional_points_nd(
    u: StepFunctionND, t: float, candidates: Sequence[Sequence[float]], window: Box
) -> List[Tuple[float, ...]]:
    """
    The candidates lying in N_t for a step function.

    On the relative interior of a face {u > t} has density 0, 1/2 or 1 and
    density 1 forces u⁻ > t, so N_t only meets edges and corners of the
    cells. Callers pass the points that can carry mass (atoms of div A).
    """
    superlevel: Optional[BoxSet] = None
    points = []
    for x in candidates:
        lower, upper = u.limits(x)
        if not lower <= t < upper:
            continue
        if superlevel is None:
            superlevel = u.superlevel(t, window)
        if superlevel.density(x) != 0.5:
            points.append(tuple(float(c) for c in x))
    return points
