"""
Exact one-dimensional measure algebra.
"""

from .functions import PiecewiseFunction1D
from .measure1d import (
    Measure1D,
    add,
    integrate,
    is_close,
    lebesgue_decompose,
    mass,
    restrict,
    scale,
    support,
    total_variation,
)
from .pieces import Arctan, Cauchy, Log, Piece, Poly, Power, Product, Recip, Sum
from .selector import LambdaSelector
from .sets import BorelSet1D, Interval1D

__all__ = [
    "Arctan",
    "BorelSet1D",
    "Cauchy",
    "Interval1D",
    "LambdaSelector",
    "Log",
    "Measure1D",
    "Piece",
    "PiecewiseFunction1D",
    "Poly",
    "Power",
    "Product",
    "Recip",
    "Sum",
    "add",
    "integrate",
    "is_close",
    "lebesgue_decompose",
    "mass",
    "restrict",
    "scale",
    "support",
    "total_variation",
]
