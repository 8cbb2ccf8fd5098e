"""
Extended reals ℝ ∪ {±∞} with the convention 0·(±∞) = 0.
"""

import math
from typing import Any

from core.errors import IndeterminateForm

INF = math.inf


class ExtReal(float):
    """A float that may be ±inf, multiplying by zero to zero."""

    def __new__(cls, value: Any = 0.0):
        return super().__new__(cls, float(value))

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self)

    def __mul__(self, other: Any) -> "ExtReal":
        if float(other) == 0.0 or float(self) == 0.0:
            return ExtReal(0.0)
        return ExtReal(float(self) * float(other))

    __rmul__ = __mul__

    def __add__(self, other: Any) -> "ExtReal":
        a, b = float(self), float(other)
        if math.isinf(a) and math.isinf(b) and a != b:
            raise IndeterminateForm(None)
        return ExtReal(a + b)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ExtReal":
        return self + (-float(other))

    def __rsub__(self, other: Any) -> "ExtReal":
        return ExtReal(-float(self)) + other

    def __neg__(self) -> "ExtReal":
        return ExtReal(-float(self))

    def __repr__(self) -> str:
        if math.isinf(self):
            return "+inf" if self > 0 else "-inf"
        return f"ExtReal({float(self)!r})"


POS_INF = ExtReal(INF)
NEG_INF = ExtReal(-INF)
