"""
Compactly supported test functions on R^N.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from core.errors import BadParams

from .profiles import BumpProfile, PlateauProfile, Profile

Box = Tuple[Tuple[float, ...], Tuple[float, ...]]


class TestFunction(ABC):
    """A C² function with compact support, its gradient and its kinks."""

    __test__ = False

    dimension: int

    @abstractmethod
    def __call__(self, x: Union[float, Sequence[float]]) -> float:
        pass

    @abstractmethod
    def gradient(self, x: Sequence[float]) -> np.ndarray:
        pass

    @abstractmethod
    def support(self) -> Box:
        """Closed box containing the support."""

    @abstractmethod
    def splits(self) -> Dict[int, List[float]]:
        """Per-axis coordinates where the function is not analytic."""

    def partial(self, j: int):
        return lambda x: float(self.gradient(x)[j])


@dataclass(frozen=True)
class TensorProductFunction(TestFunction):
    """φ(x) = Π_i profile_i(x_i)."""

    __test__ = False

    profiles: Tuple[Profile, ...]

    @property
    def dimension(self) -> int:
        return len(self.profiles)

    def __call__(self, x: Union[float, Sequence[float]]) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        value = 1.0
        for profile, c in zip(self.profiles, x):
            value *= profile.value(float(c))
            if value == 0.0:
                return 0.0
        return value

    def gradient(self, x: Sequence[float]) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        values = np.array([p.value(float(c)) for p, c in zip(self.profiles, x)])
        slopes = np.array([p.derivative(float(c)) for p, c in zip(self.profiles, x)])
        grad = np.empty(self.dimension)
        for j in range(self.dimension):
            others = np.prod(np.delete(values, j))
            grad[j] = slopes[j] * others
        return grad

    def support(self) -> Box:
        lo, hi = zip(*(p.support() for p in self.profiles))
        return tuple(lo), tuple(hi)

    def splits(self) -> Dict[int, List[float]]:
        return {i: list(p.breakpoints()) for i, p in enumerate(self.profiles)}

    def sup_abs(self) -> float:
        return float(np.prod([p.sup_abs() for p in self.profiles]))


@dataclass(frozen=True)
class TestFunctionSum(TestFunction):
    """Σ c_k φ_k."""

    __test__ = False

    terms: Tuple[Tuple[float, TestFunction], ...]

    def __post_init__(self):
        if not self.terms:
            raise BadParams("empty test-function sum")
        if len({t.dimension for _, t in self.terms}) != 1:
            raise BadParams("terms live in different dimensions")

    @property
    def dimension(self) -> int:
        return self.terms[0][1].dimension

    def __call__(self, x: Union[float, Sequence[float]]) -> float:
        return sum(c * t(x) for c, t in self.terms)

    def gradient(self, x: Sequence[float]) -> np.ndarray:
        return sum(c * t.gradient(x) for c, t in self.terms)

    def support(self) -> Box:
        boxes = [t.support() for _, t in self.terms]
        lo = tuple(min(b[0][i] for b in boxes) for i in range(self.dimension))
        hi = tuple(max(b[1][i] for b in boxes) for i in range(self.dimension))
        return lo, hi

    def splits(self) -> Dict[int, List[float]]:
        merged: Dict[int, List[float]] = {}
        for _, t in self.terms:
            for axis, coords in t.splits().items():
                merged.setdefault(axis, []).extend(coords)
        return merged


def bump(center: Sequence[float], radius: Union[float, Sequence[float]]) -> TensorProductFunction:
    """Π_i (1 − ((x_i − c_i)/r_i)²)³ on the box of half-widths r_i."""
    center = [float(c) for c in center]
    radii = [float(radius)] * len(center) if np.isscalar(radius) else [float(r) for r in radius]
    return TensorProductFunction(
        tuple(BumpProfile(c, r, 1.0, 3) for c, r in zip(center, radii))
    )


def plateau(lo: Sequence[float], hi: Sequence[float], ramp: float = 0.25) -> TensorProductFunction:
    """Equal to 1 on [lo, hi], supported in the box widened by `ramp`."""
    return TensorProductFunction(
        tuple(PlateauProfile(a, b, ramp) for a, b in zip(lo, hi))
    )


def random_bumps(
    rng: np.random.Generator,
    window: Box,
    count: int,
    min_radius: float = 0.2,
    max_radius: float = 0.8,
) -> List[TensorProductFunction]:
    """
    Bumps with random centres and radii whose supports stay inside the window.
    """
    lo = np.asarray(window[0], dtype=float)
    hi = np.asarray(window[1], dtype=float)
    reach = float(np.min(hi - lo)) / 2.0
    if reach <= min_radius:
        raise BadParams(f"window {window} too small for bumps of radius {min_radius}")
    out = []
    for _ in range(count):
        radius = float(rng.uniform(min_radius, min(max_radius, 0.95 * reach)))
        center = rng.uniform(lo + radius, hi - radius)
        out.append(bump(center, radius))
    return out
