"""
Analytic pieces: the closed-form building blocks of 1D densities and functions.

Every piece is an immutable value living on an open sub-interval. Polynomials
keep rational coefficients (fractions.Fraction) when built from rationals, so
sums, products, derivatives and integrals of polynomial pieces stay exact.
The remaining families carry exact antiderivatives and one-sided limits,
possibly infinite.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import optimize

from core.errors import NonIntegrablePiece, UnsupportedPiece
from core.quadrature import quad1d

Number = Union[int, Fraction, float]
INF = math.inf


def as_number(value: Any) -> Number:
    """Fractions for exact inputs, floats otherwise."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


def _is_zero(value: Number) -> bool:
    return value == 0


class Piece(ABC):
    """A real-analytic function on an open interval."""

    kind: str = "piece"

    @abstractmethod
    def value(self, x: Number) -> Number:
        """Pointwise value at an interior point."""

    def limit(self, x: float, side: int) -> float:
        """
        One-sided limit at x.

        Args:
            x: Point
            side: +1 for the limit from the right, -1 from the left

        Returns:
            The limit, possibly ±inf
        """
        return float(self.value(x))

    @abstractmethod
    def derivative(self) -> "Piece":
        """Derivative on the interval."""

    def antiderivative(self) -> Optional["Piece"]:
        """Closed-form antiderivative, or None when only quadrature applies."""
        return None

    @abstractmethod
    def scale(self, c: Number) -> "Piece":
        """c times the piece."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """JSON descriptor."""

    def singular_points(self) -> Tuple[float, ...]:
        """Points where the piece may blow up."""
        return ()

    def is_zero(self) -> bool:
        return False

    def add(self, other: "Piece") -> "Piece":
        return simplify(Sum((self, other)))

    def times(self, other: "Piece") -> "Piece":
        if isinstance(other, Poly) and not isinstance(self, Poly):
            return simplify(Product(other, self))
        return simplify(Product(self, other))

    def integral(self, a: float, b: float) -> float:
        """
        ∫_a^b of the piece, exact when an antiderivative is known.

        Raises:
            NonIntegrablePiece: If the integral diverges at an endpoint
        """
        if b <= a:
            return 0.0
        F = self.antiderivative()
        if F is not None:
            upper = F.limit(b, -1)
            lower = F.limit(a, +1)
            if not (math.isfinite(upper) and math.isfinite(lower)):
                raise NonIntegrablePiece(self, a, b)
            return float(upper - lower)
        for end, side in ((a, +1), (b, -1)):
            if not math.isfinite(self.limit(end, side)) and not self._integrable_at(
                end
            ):
                raise NonIntegrablePiece(self, a, b)
        points = [p for p in self.singular_points() if a < p < b]
        return quad1d(lambda x: float(self.value(x)), a, b, points=points)

    def _integrable_at(self, x: float) -> bool:
        return True

    def solve(self, level: float, a: float, b: float) -> List[float]:
        """
        Points in (a, b) where the piece crosses level.

        Generic version: sign changes on a sample grid refined by brentq.
        """
        if b <= a:
            return []
        ts = np.linspace(0.0, 1.0, 257)[1:-1]
        xs = a + (b - a) * ts
        values = np.array([float(self.value(x)) - level for x in xs])
        roots: List[float] = []
        for i, v in enumerate(values):
            if v == 0.0:
                roots.append(float(xs[i]))
        for i in range(len(xs) - 1):
            if values[i] * values[i + 1] < 0:
                roots.append(
                    optimize.brentq(
                        lambda x: float(self.value(x)) - level,
                        xs[i],
                        xs[i + 1],
                        xtol=1e-15,
                    )
                )
        return sorted(roots)

    def abs_integral(self, a: float, b: float) -> float:
        """∫_a^b |piece|, split at sign changes."""
        if self.is_zero() or b <= a:
            return 0.0
        cuts = [a] + [r for r in self.solve(0.0, a, b) if a < r < b] + [b]
        return sum(abs(self.integral(lo, hi)) for lo, hi in zip(cuts, cuts[1:]))


@dataclass(frozen=True)
class Poly(Piece):
    """Polynomial with coefficients in increasing degree."""

    coeffs: Tuple[Number, ...]
    kind = "poly"

    def __post_init__(self):
        coeffs = [as_number(c) for c in self.coeffs]
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, slope: Number, intercept: Number = 0) -> "Poly":
        return cls((intercept, slope))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and _is_zero(self.coeffs[0])

    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def value(self, x: Number) -> Number:
        exact = isinstance(x, (int, Fraction)) and all(
            isinstance(c, Fraction) for c in self.coeffs
        )
        if exact:
            result: Number = Fraction(0)
            for c in reversed(self.coeffs):
                result = result * x + c
            return result
        result = 0.0
        for c in reversed(self.coeffs):
            result = result * float(x) + float(c)
        return result

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0,))

    def antiderivative(self) -> "Poly":
        return Poly((0,) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def scale(self, c: Number) -> "Poly":
        c = as_number(c)
        return Poly(tuple(c * a for a in self.coeffs))

    def plus(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def product(self, other: "Poly") -> "Poly":
        out: List[Number] = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    def integral(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        F = self.antiderivative()
        return float(F.value(b) - F.value(a))

    def exact_integral(self, a: Number, b: Number) -> Number:
        """Integral keeping Fraction arithmetic when the limits are rational."""
        F = self.antiderivative()
        return F.value(b) - F.value(a)

    def divide_linear(self, a: Number) -> Tuple["Poly", Number]:
        """Synthetic division by (x − a): returns quotient and remainder."""
        a = as_number(a)
        coeffs = list(reversed(self.coeffs))
        out: List[Number] = []
        acc: Number = Fraction(0)
        for c in coeffs:
            acc = acc * a + c
            out.append(acc)
        remainder = out.pop()
        return Poly(tuple(reversed(out)) or (0,)), remainder

    def root_multiplicity(self, a: float) -> Tuple[int, "Poly"]:
        """Multiplicity m of a as a root and the cofactor q with p = (x−a)^m q."""
        m = 0
        current = self
        scale = max(abs(float(c)) for c in self.coeffs) or 1.0
        while not current.is_zero() and current.degree >= 1:
            quotient, remainder = current.divide_linear(a)
            if abs(float(remainder)) > 1e-12 * scale:
                break
            m += 1
            current = quotient
        return m, current

    def solve(self, level: float, a: float, b: float) -> List[float]:
        shifted = self.plus(Poly.constant(-as_number(level)))
        if shifted.is_zero() or shifted.degree == 0:
            return []
        if shifted.degree == 1:
            c0, c1 = shifted.coeffs
            root = -c0 / c1
            return [float(root)] if a < root < b else []
        highest_first = [float(c) for c in reversed(shifted.coeffs)]
        roots = []
        for r in np.roots(highest_first):
            if abs(r.imag) > 1e-9 * max(1.0, abs(r.real)):
                continue
            x = float(r.real)
            # polish against the float polynomial
            lo_x, hi_x = x - 1e-9 * max(1.0, abs(x)), x + 1e-9 * max(1.0, abs(x))
            f_lo = float(shifted.value(lo_x))
            f_hi = float(shifted.value(hi_x))
            if f_lo * f_hi < 0:
                x = optimize.brentq(
                    lambda t: float(shifted.value(t)), lo_x, hi_x, xtol=1e-16
                )
            if a < x < b and all(abs(x - y) > 1e-12 for y in roots):
                roots.append(x)
        return sorted(roots)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "poly", "coeffs": [_encode(c) for c in self.coeffs]}


@dataclass(frozen=True)
class Recip(Piece):
    """c / (x − a)."""

    c: Number
    a: Number = 0
    kind = "recip"

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        object.__setattr__(self, "a", as_number(self.a))

    def value(self, x: Number) -> Number:
        if isinstance(x, (int, Fraction)) and isinstance(self.c, Fraction):
            return self.c / (x - self.a)
        return float(self.c) / (float(x) - float(self.a))

    def limit(self, x: float, side: int) -> float:
        if x == self.a:
            return _sign(self.c) * side * INF if self.c != 0 else 0.0
        return float(self.value(x))

    def derivative(self) -> "Power":
        return Power(-self.c, self.a, -2, 1)

    def antiderivative(self) -> "Log":
        return Log(self.c, self.a)

    def scale(self, c: Number) -> "Recip":
        return Recip(as_number(c) * self.c, self.a)

    def singular_points(self) -> Tuple[float, ...]:
        return (float(self.a),)

    def is_zero(self) -> bool:
        return self.c == 0

    def solve(self, level: float, a: float, b: float) -> List[float]:
        if level == 0 or self.c == 0:
            return []
        x = float(self.a) + float(self.c) / level
        return [x] if a < x < b else []

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "recip", "c": _encode(self.c), "a": _encode(self.a)}


@dataclass(frozen=True)
class Power(Piece):
    """c · (s(x − a))^p with orientation s = ±1, defined where s(x − a) > 0."""

    c: Number
    a: Number
    p: Number
    s: int = 1
    kind = "power"

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        object.__setattr__(self, "a", as_number(self.a))
        object.__setattr__(self, "p", as_number(self.p))
        if self.s not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def value(self, x: Number) -> float:
        base = self.s * (float(x) - float(self.a))
        return float(self.c) * base ** float(self.p)

    def limit(self, x: float, side: int) -> float:
        if x == self.a:
            if self.p < 0:
                return _sign(self.c) * INF if self.c != 0 else 0.0
            return 0.0 if self.p > 0 else float(self.c)
        return self.value(x)

    def derivative(self) -> Piece:
        if self.p == 0:
            return Poly.constant(0)
        return Power(self.c * self.p * self.s, self.a, self.p - 1, self.s)

    def antiderivative(self) -> Piece:
        if self.p == -1:
            return Log(self.c * self.s, self.a)
        return Power(self.c * self.s / (self.p + 1), self.a, self.p + 1, self.s)

    def scale(self, c: Number) -> "Power":
        return Power(as_number(c) * self.c, self.a, self.p, self.s)

    def singular_points(self) -> Tuple[float, ...]:
        return (float(self.a),) if self.p < 0 else ()

    def is_zero(self) -> bool:
        return self.c == 0

    def solve(self, level: float, a: float, b: float) -> List[float]:
        if self.c == 0 or self.p == 0:
            return []
        ratio = level / float(self.c)
        if ratio <= 0:
            return []
        x = float(self.a) + self.s * ratio ** (1.0 / float(self.p))
        return [x] if a < x < b else []

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "power",
            "c": _encode(self.c),
            "a": _encode(self.a),
            "p": _encode(self.p),
            "s": self.s,
        }


@dataclass(frozen=True)
class Log(Piece):
    """c · log|x − a|."""

    c: Number
    a: Number = 0
    kind = "log"

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        object.__setattr__(self, "a", as_number(self.a))

    def value(self, x: Number) -> float:
        return float(self.c) * math.log(abs(float(x) - float(self.a)))

    def limit(self, x: float, side: int) -> float:
        if x == self.a:
            return -_sign(self.c) * INF if self.c != 0 else 0.0
        return self.value(x)

    def derivative(self) -> Recip:
        return Recip(self.c, self.a)

    def antiderivative(self) -> Piece:
        shift = Poly((-as_number(self.a), 1))
        # c[(x−a)log|x−a| − (x−a)]
        return simplify(
            Sum((Product(shift, Log(self.c, self.a)), shift.scale(-self.c)))
        )

    def scale(self, c: Number) -> "Log":
        return Log(as_number(c) * self.c, self.a)

    def singular_points(self) -> Tuple[float, ...]:
        return (float(self.a),)

    def is_zero(self) -> bool:
        return self.c == 0

    def solve(self, level: float, a: float, b: float) -> List[float]:
        if self.c == 0:
            return []
        r = math.exp(level / float(self.c))
        return [x for x in (float(self.a) - r, float(self.a) + r) if a < x < b]

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "log", "c": _encode(self.c), "a": _encode(self.a)}


@dataclass(frozen=True)
class Cauchy(Piece):
    """c · k / (1 + k²(x − a)²)."""

    c: Number
    k: Number
    a: Number = 0
    kind = "cauchy"

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        object.__setattr__(self, "k", as_number(self.k))
        object.__setattr__(self, "a", as_number(self.a))

    def value(self, x: Number) -> float:
        k = float(self.k)
        t = k * (float(x) - float(self.a))
        return float(self.c) * k / (1.0 + t * t)

    def derivative(self) -> Piece:
        raise UnsupportedPiece("derivative of a Cauchy kernel is not represented")

    def antiderivative(self) -> "Arctan":
        return Arctan(self.c, self.k, self.a)

    def scale(self, c: Number) -> "Cauchy":
        return Cauchy(as_number(c) * self.c, self.k, self.a)

    def is_zero(self) -> bool:
        return self.c == 0 or self.k == 0

    def solve(self, level: float, a: float, b: float) -> List[float]:
        if self.is_zero() or level == 0:
            return []
        k = float(self.k)
        ratio = float(self.c) * k / level - 1.0
        if ratio < 0:
            return []
        d = math.sqrt(ratio) / abs(k)
        return sorted(
            {x for x in (float(self.a) - d, float(self.a) + d) if a < x < b}
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "cauchy",
            "c": _encode(self.c),
            "k": _encode(self.k),
            "a": _encode(self.a),
        }


@dataclass(frozen=True)
class Arctan(Piece):
    """c · arctan(k(x − a))."""

    c: Number
    k: Number
    a: Number = 0
    kind = "arctan"

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        object.__setattr__(self, "k", as_number(self.k))
        object.__setattr__(self, "a", as_number(self.a))

    def value(self, x: Number) -> float:
        return float(self.c) * math.atan(float(self.k) * (float(x) - float(self.a)))

    def derivative(self) -> Cauchy:
        return Cauchy(self.c, self.k, self.a)

    def scale(self, c: Number) -> "Arctan":
        return Arctan(as_number(c) * self.c, self.k, self.a)

    def is_zero(self) -> bool:
        return self.c == 0 or self.k == 0

    def integral(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        k, c, s = float(self.k), float(self.c), float(self.a)

        def F(x: float) -> float:
            t = k * (x - s)
            return c * ((x - s) * math.atan(t) - math.log1p(t * t) / (2.0 * k))

        return F(b) - F(a)

    def solve(self, level: float, a: float, b: float) -> List[float]:
        if self.is_zero():
            return []
        ratio = level / float(self.c)
        if abs(ratio) >= math.pi / 2:
            return []
        x = float(self.a) + math.tan(ratio) / float(self.k)
        return [x] if a < x < b else []

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "arctan",
            "c": _encode(self.c),
            "k": _encode(self.k),
            "a": _encode(self.a),
        }


@dataclass(frozen=True)
class Sum(Piece):
    """Finite sum of pieces."""

    terms: Tuple[Piece, ...]
    kind = "sum"

    def value(self, x: Number) -> Number:
        total: Number = 0
        for term in self.terms:
            total = total + term.value(x)
        return total

    def limit(self, x: float, side: int) -> float:
        values = [term.limit(x, side) for term in self.terms]
        infinite = {v for v in values if math.isinf(v)}
        if len(infinite) > 1:
            raise UnsupportedPiece(f"competing infinities in {self!r} at {x}")
        return float(sum(values))

    def derivative(self) -> Piece:
        return simplify(Sum(tuple(t.derivative() for t in self.terms)))

    def antiderivative(self) -> Optional[Piece]:
        parts = [t.antiderivative() for t in self.terms]
        if any(p is None for p in parts):
            return None
        return simplify(Sum(tuple(parts)))

    def integral(self, a: float, b: float) -> float:
        return sum(t.integral(a, b) for t in self.terms)

    def scale(self, c: Number) -> Piece:
        return simplify(Sum(tuple(t.scale(c) for t in self.terms)))

    def singular_points(self) -> Tuple[float, ...]:
        return tuple(sorted({p for t in self.terms for p in t.singular_points()}))

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "sum", "terms": [t.to_dict() for t in self.terms]}


@dataclass(frozen=True)
class Product(Piece):
    """left · right, with left usually a polynomial."""

    left: Piece
    right: Piece
    kind = "product"

    def value(self, x: Number) -> Number:
        return self.left.value(x) * self.right.value(x)

    def limit(self, x: float, side: int) -> float:
        lv = self.left.limit(x, side)
        rv = self.right.limit(x, side)
        if math.isfinite(lv) and math.isfinite(rv):
            return lv * rv
        if not isinstance(self.left, Poly) or math.isinf(lv):
            if lv == 0 or rv == 0:
                raise UnsupportedPiece(f"0·∞ in {self!r} at {x}")
            return _sign(lv) * _sign(rv) * INF
        m, q = self.left.root_multiplicity(x)
        qv = float(q.value(x))
        if m == 0:
            return _sign(lv) * _sign(rv) * INF
        right = self.right
        if isinstance(right, Log):
            return 0.0
        if isinstance(right, Recip):
            order, c = -1, float(right.c)
            if m + order > 0:
                return 0.0
            if m + order == 0:
                return c * qv
            return _sign(c * qv) * side ** (m - 1) * INF
        if isinstance(right, Power):
            order, c = float(right.p), float(right.c)
            if m + order > 0:
                return 0.0
            factor = right.s**m
            if m + order == 0:
                return c * qv * factor
            return _sign(c * qv) * side**m * INF
        raise UnsupportedPiece(f"cannot resolve 0·∞ in {self!r} at {x}")

    def _integrable_at(self, x: float) -> bool:
        if not isinstance(self.left, Poly):
            return False
        m, _ = self.left.root_multiplicity(x)
        right = self.right
        if isinstance(right, Recip):
            return m - 1 > -1
        if isinstance(right, Power):
            return m + float(right.p) > -1
        return isinstance(right, Log)

    def derivative(self) -> Piece:
        return simplify(
            Sum(
                (
                    Product(self.left.derivative(), self.right),
                    Product(self.left, self.right.derivative()),
                )
            )
        )

    def scale(self, c: Number) -> Piece:
        return simplify(Product(self.left.scale(c), self.right))

    def singular_points(self) -> Tuple[float, ...]:
        return tuple(
            sorted(set(self.left.singular_points()) | set(self.right.singular_points()))
        )

    def is_zero(self) -> bool:
        return self.left.is_zero() or self.right.is_zero()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "product",
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


def simplify(piece: Piece) -> Piece:
    """
    Canonical form: flatten sums, merge polynomials, drop zeros, absorb
    constant polynomial factors and divide polynomials by reciprocals.
    """
    if isinstance(piece, Product):
        left, right = simplify(piece.left), simplify(piece.right)
        if left.is_zero() or right.is_zero():
            return Poly.constant(0)
        if isinstance(left, Poly) and isinstance(right, Poly):
            return left.product(right)
        if isinstance(right, Poly) and not isinstance(left, Poly):
            left, right = right, left
        if isinstance(left, Poly) and left.is_constant():
            return right.scale(left.coeffs[0])
        if isinstance(left, Poly) and isinstance(right, Sum):
            return simplify(Sum(tuple(Product(left, t) for t in right.terms)))
        if isinstance(left, Poly) and isinstance(right, Recip):
            quotient, remainder = left.divide_linear(right.a)
            return simplify(
                Sum((quotient.scale(right.c), Recip(right.c * remainder, right.a)))
            )
        if isinstance(left, Poly) and isinstance(right, Product) and isinstance(
            right.left, Poly
        ):
            return simplify(Product(left.product(right.left), right.right))
        return Product(left, right)
    if isinstance(piece, Sum):
        flat: List[Piece] = []
        for term in piece.terms:
            term = simplify(term)
            if isinstance(term, Sum):
                flat.extend(term.terms)
            else:
                flat.append(term)
        poly = Poly.constant(0)
        others: List[Piece] = []
        for term in flat:
            if isinstance(term, Poly):
                poly = poly.plus(term)
            elif not term.is_zero():
                merged = False
                for i, other in enumerate(others):
                    combined = _merge_like(other, term)
                    if combined is not None:
                        others[i] = combined
                        merged = True
                        break
                if not merged:
                    others.append(term)
        others = [t for t in others if not t.is_zero()]
        if not others:
            return poly
        terms = tuple(others) if poly.is_zero() else (poly,) + tuple(others)
        return terms[0] if len(terms) == 1 else Sum(terms)
    return piece


def _merge_like(a: Piece, b: Piece) -> Optional[Piece]:
    """Combine two pieces of the same family and parameters."""
    if type(a) is not type(b):
        return None
    if isinstance(a, (Recip, Log)) and a.a == b.a:
        return type(a)(a.c + b.c, a.a)
    if isinstance(a, Power) and (a.a, a.p, a.s) == (b.a, b.p, b.s):
        return Power(a.c + b.c, a.a, a.p, a.s)
    if isinstance(a, (Cauchy, Arctan)) and (a.k, a.a) == (b.k, b.a):
        return type(a)(a.c + b.c, a.k, a.a)
    return None


def _encode(value: Number) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    return value


def _decode(value: Any) -> Number:
    return as_number(value)


def _arguments(data: Dict[str, Any], names: Tuple[str, ...]) -> List[Number]:
    """
    Constructor arguments of a closed-form piece, read from named keys or
    from a positional "coeffs" list in the same order. A trailing shift a
    defaults to 0.
    """
    if "coeffs" in data:
        values = list(data["coeffs"])
        if names[-1] == "a" and len(values) == len(names) - 1:
            values.append(0)
        if len(values) != len(names):
            raise ValueError(f"{data.get('kind')} expects coeffs {list(names)}, got {len(values)} value(s)")
    else:
        values = [data[name] if name != "a" else data.get("a", 0) for name in names]
    return [_decode(v) for v in values]


def piece_from_dict(data: Dict[str, Any]) -> Piece:
    """Inverse of Piece.to_dict."""
    kind = data.get("kind")
    if kind == "poly":
        return Poly(tuple(_decode(c) for c in data["coeffs"]))
    if kind == "recip":
        return Recip(*_arguments(data, ("c", "a")))
    if kind == "power":
        return Power(
            _decode(data["c"]),
            _decode(data.get("a", 0)),
            _decode(data["p"]),
            int(data.get("s", 1)),
        )
    if kind == "log":
        return Log(*_arguments(data, ("c", "a")))
    if kind == "cauchy":
        return Cauchy(*_arguments(data, ("c", "k", "a")))
    if kind == "arctan":
        return Arctan(*_arguments(data, ("c", "k", "a")))
    if kind == "sum":
        return Sum(tuple(piece_from_dict(t) for t in data["terms"]))
    if kind == "product":
        return Product(piece_from_dict(data["left"]), piece_from_dict(data["right"]))
    raise ValueError(f"unknown piece kind: {kind!r}")
