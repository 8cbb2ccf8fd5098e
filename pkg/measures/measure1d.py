"""
Signed Radon measures on a bounded open interval: finitely many atoms plus a
piecewise analytic density.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple, Union

from core.errors import BadParams, UndefinedAtAtom
from core.quadrature import quad1d

from .functions import PiecewiseFunction1D
from .pieces import Number, Piece, Poly, Sum, as_number, piece_from_dict, simplify
from .sets import BorelSet1D, Interval1D, _plain

logger = logging.getLogger(__name__)

Atom = Tuple[float, Number]
DensityPart = Tuple[Interval1D, Piece]


@dataclass(frozen=True)
class Measure1D:
    """
    μ = Σ wᵢ δ_{xᵢ} + ρ L¹ on an open interval.

    Build instances with Measure1D.build, which sorts and merges atoms, refines
    overlapping density parts, drops zero atoms/pieces and merges adjacent
    equal pieces.
    """

    domain: Interval1D
    atoms: Tuple[Atom, ...] = ()
    density: Tuple[DensityPart, ...] = ()

    def __post_init__(self):
        for x, _ in self.atoms:
            if not self.domain.contains(x):
                raise BadParams(f"atom at {x} outside {self.domain}")
        for interval, _ in self.density:
            if interval.lo < self.domain.lo or interval.hi > self.domain.hi:
                raise BadParams(f"density interval {interval} outside {self.domain}")
        for (a, _), (b, _) in zip(self.density, self.density[1:]):
            if b.lo < a.hi:
                raise BadParams("density intervals overlap")

    @classmethod
    def build(
        cls,
        domain: Interval1D,
        atoms: Iterable[Atom] = (),
        density: Iterable[DensityPart] = (),
    ) -> "Measure1D":
        merged: Dict[float, Number] = {}
        for x, w in atoms:
            if not domain.contains(x):
                continue
            merged[x] = merged.get(x, 0) + as_number(w)
        clean_atoms = tuple(sorted((x, w) for x, w in merged.items() if w != 0))
        return cls(domain, clean_atoms, _normalize_density(domain, density))

    @classmethod
    def zero(cls, domain: Interval1D) -> "Measure1D":
        return cls(domain)

    @classmethod
    def dirac(cls, domain: Interval1D, x: float, weight: Number = 1) -> "Measure1D":
        return cls.build(domain, atoms=[(x, weight)])

    @classmethod
    def lebesgue(
        cls, domain: Interval1D, interval: Interval1D, piece: Optional[Piece] = None
    ) -> "Measure1D":
        return cls.build(domain, density=[(interval, piece or Poly.constant(1))])

    def is_zero(self) -> bool:
        return not self.atoms and not self.density

    def atom_weight(self, x: float) -> Number:
        for y, w in self.atoms:
            if y == x:
                return w
        return 0

    def __add__(self, other: "Measure1D") -> "Measure1D":
        return add(self, other)

    def __sub__(self, other: "Measure1D") -> "Measure1D":
        return add(self, scale(other, -1))

    def __neg__(self) -> "Measure1D":
        return scale(self, -1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": self.domain.to_dict(),
            "atoms": [[_encode(x), _encode(w)] for x, w in self.atoms],
            "density": [
                {"interval": i.to_dict(), **p.to_dict()} for i, p in self.density
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Measure1D":
        domain = Interval1D.from_dict(data["domain"])
        atoms = [(as_number(x), as_number(w)) for x, w in data.get("atoms", [])]
        density = []
        for part in data.get("density", []):
            part = dict(part)
            interval = Interval1D.from_dict(part.pop("interval"))
            density.append((interval, piece_from_dict(part)))
        return cls.build(domain, atoms, density)


def _encode(value: Any) -> Any:
    return _plain(value)


def _normalize_density(
    domain: Interval1D, density: Iterable[DensityPart]
) -> Tuple[DensityPart, ...]:
    parts = []
    for interval, piece in density:
        clipped = interval.intersect(domain)
        if clipped is not None and not piece.is_zero():
            parts.append((clipped, piece))
    if not parts:
        return ()
    cuts = sorted({c for i, _ in parts for c in (i.lo, i.hi)})
    out: List[DensityPart] = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        covering = [p for i, p in parts if i.contains(mid)]
        if not covering:
            continue
        piece = covering[0] if len(covering) == 1 else simplify(Sum(tuple(covering)))
        if piece.is_zero():
            continue
        if out and out[-1][0].hi == lo and out[-1][1] == piece:
            out[-1] = (Interval1D(out[-1][0].lo, hi), piece)
        else:
            out.append((Interval1D(lo, hi), piece))
    return tuple(out)


def add(mu: Measure1D, nu: Measure1D) -> Measure1D:
    """μ + ν on a common domain."""
    if mu.domain != nu.domain:
        raise BadParams(f"domains differ: {mu.domain} vs {nu.domain}")
    return Measure1D.build(mu.domain, mu.atoms + nu.atoms, mu.density + nu.density)


def scale(mu: Measure1D, c: Number) -> Measure1D:
    """c·μ."""
    c = as_number(c)
    return Measure1D.build(
        mu.domain,
        [(x, c * w) for x, w in mu.atoms],
        [(i, p.scale(c)) for i, p in mu.density],
    )


def total_variation(mu: Measure1D, B: Optional[BorelSet1D] = None) -> float:
    """
    |μ|(B), or |μ|(domain) when B is None.

    Raises:
        NonIntegrablePiece: If a density piece is not absolutely integrable
    """
    if B is not None:
        mu = restrict(mu, B)
    atoms = sum(abs(float(w)) for _, w in mu.atoms)
    return atoms + sum(p.abs_integral(i.lo, i.hi) for i, p in mu.density)


def mass(mu: Measure1D, B: Optional[BorelSet1D] = None) -> float:
    """Signed μ(B), or μ(domain) when B is None."""
    if B is not None:
        mu = restrict(mu, B)
    atoms = sum(float(w) for _, w in mu.atoms)
    return atoms + sum(p.integral(i.lo, i.hi) for i, p in mu.density)


def restrict(mu: Measure1D, B: BorelSet1D) -> Measure1D:
    """μ⌞B: atoms kept iff inside B, densities clipped to B's intervals."""
    atoms = [(x, w) for x, w in mu.atoms if B.contains(x)]
    density = []
    for interval, piece in mu.density:
        for component in B.intervals:
            clipped = interval.intersect(component)
            if clipped is not None:
                density.append((clipped, piece))
    return Measure1D.build(mu.domain, atoms, density)


def lebesgue_decompose(mu: Measure1D) -> Tuple[Measure1D, Measure1D]:
    """(absolutely continuous part, singular part)."""
    return Measure1D(mu.domain, (), mu.density), Measure1D(mu.domain, mu.atoms, ())


def support(mu: Measure1D) -> BorelSet1D:
    """Closed support intersected with the domain."""
    points = [x for x, _ in mu.atoms]
    intervals = []
    for interval, _ in mu.density:
        intervals.append(interval)
        points.extend(
            c for c in (interval.lo, interval.hi) if mu.domain.contains(c)
        )
    return BorelSet1D(tuple(intervals), tuple(points))


def integrate(
    f: Union[PiecewiseFunction1D, Callable[[float], float], Piece],
    mu: Measure1D,
) -> float:
    """
    ∫ f dμ.

    Exact for polynomial × polynomial, closed form for constant × tagged
    pieces, adaptive quadrature otherwise.

    Raises:
        UndefinedAtAtom: If f jumps at an atom and has no point value there
    """
    if isinstance(f, Piece):
        f = PiecewiseFunction1D.from_piece(mu.domain, f)

    if isinstance(f, PiecewiseFunction1D):
        total = 0.0
        for x, w in mu.atoms:
            value = f.defined_value(x)
            if value is None:
                raise UndefinedAtAtom(x)
            total += _times(value, w)
        for interval, piece in mu.density:
            for sub, f_piece in f.pieces_on(interval):
                total += f_piece.times(piece).integral(sub.lo, sub.hi)
        return total

    total = sum(_times(f(x), w) for x, w in mu.atoms)
    for interval, piece in mu.density:
        points = piece.singular_points()
        total += quad1d(
            lambda x, p=piece: f(x) * float(p.value(x)),
            float(interval.lo),
            float(interval.hi),
            points=points,
        )
    return total


def _times(value: Any, weight: Number) -> float:
    # 0·(±∞) = 0
    if weight == 0 or value == 0:
        return 0.0
    return float(value) * float(weight)


def is_close(mu: Measure1D, nu: Measure1D, tol: float = 1e-12) -> bool:
    """|μ − ν|(domain) ≤ tol."""
    difference = add(mu, scale(nu, -1))
    return total_variation(difference) <= tol
