"""
Cell grids over a box window and the parameters of the discrete energy.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import BadParams, ShapeMismatch
from fields.field import FieldND

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    One real value per cell of a uniform grid with spacing h.

    Cell i occupies origin + h·[i, i + 1) along every axis.
    """

    values: np.ndarray
    spacing: float = 1.0
    origin: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 0 or values.size == 0:
            raise BadParams("a grid function needs at least one cell")
        if not np.all(np.isfinite(values)):
            raise BadParams("grid values must be finite")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise BadParams(f"spacing must be positive, got {self.spacing}")
        origin = tuple(float(c) for c in self.origin) or (0.0,) * values.ndim
        if len(origin) != values.ndim:
            raise ShapeMismatch(f"origin {origin} does not match a {values.ndim}-D grid")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "spacing", float(self.spacing))
        object.__setattr__(self, "origin", origin)

    @classmethod
    def zeros(cls, shape: Sequence[int], spacing: float = 1.0, origin: Sequence[float] = ()) -> "GridFunction":
        return cls(np.zeros(tuple(shape)), spacing, tuple(origin))

    @classmethod
    def on_window(cls, values: np.ndarray, lo: Sequence[float], hi: Sequence[float]) -> "GridFunction":
        """Cells tiling the box (lo, hi); every axis must give the same spacing."""
        values = np.asarray(values, dtype=float)
        widths = [(b - a) / n for a, b, n in zip(lo, hi, values.shape)]
        if len(widths) != values.ndim or not np.allclose(widths, widths[0], rtol=1e-12):
            raise ShapeMismatch(f"grid {values.shape} does not tile the window {lo}..{hi} uniformly")
        return cls(values, widths[0], tuple(lo))

    def like(self, values: np.ndarray) -> "GridFunction":
        values = np.asarray(values, dtype=float)
        if values.shape != self.shape:
            raise ShapeMismatch(f"shape {values.shape} differs from {self.shape}")
        return GridFunction(values, self.spacing, self.origin)

    @property
    def dimension(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dimension

    @property
    def window(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        hi = tuple(o + n * self.spacing for o, n in zip(self.origin, self.shape))
        return self.origin, hi

    def centres(self) -> np.ndarray:
        """Cell centres, shape (*shape, N)."""
        axes = [o + (np.arange(n) + 0.5) * self.spacing for o, n in zip(self.origin, self.shape)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def mean(self) -> float:
        return float(self.values.mean())

    def matches(self, other: "GridFunction") -> bool:
        return self.shape == other.shape and math.isclose(self.spacing, other.spacing, rel_tol=1e-12)


def load_grid_csv(path: Union[str, Path], spacing: float = 1.0, origin: Sequence[float] = ()) -> GridFunction:
    """Read a 1D or 2D grid from comma separated values (rows index the first axis)."""
    try:
        values = np.loadtxt(path, delimiter=",", ndmin=1, dtype=float)
    except (OSError, ValueError) as exc:
        raise BadParams(f"cannot read grid from {path}: {exc}") from exc
    return GridFunction(values, spacing, tuple(origin))


def save_grid_csv(u: GridFunction, path: Union[str, Path]) -> None:
    if u.dimension > 2:
        raise BadParams("only 1D and 2D grids are written as CSV")
    values = u.values if u.dimension == 2 else u.values[None, :]
    np.savetxt(path, values, delimiter=",", fmt="%.17g")


@dataclass(frozen=True, eq=False)
class EnergyParams:
    """
    Data of |A·∇_h u|(grid) + ‖u − g‖_{L^p(|A|)}.

    Attributes:
        g: Datum
        samples: A at the cell centres, shape (*g.shape, N)
        p: Fidelity exponent in [1, ∞]
        max_iter: Iteration budget of the solver
        tau: Primal step size (derived from the operator norm when None)
        sigma: Dual step size (derived from the operator norm when None)
        tol: Stopping tolerance
        strict: Raise BudgetExceeded instead of returning the best iterate
    """

    g: GridFunction
    samples: np.ndarray
    p: float = 2.0
    max_iter: int = 20000
    tau: Optional[float] = None
    sigma: Optional[float] = None
    tol: float = 1e-9
    strict: bool = False

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        expected = self.g.shape + (self.g.dimension,)
        if samples.shape != expected:
            raise ShapeMismatch(f"field samples {samples.shape} do not match {expected}")
        if not np.all(np.isfinite(samples)):
            raise BadParams("field samples must be finite")
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise BadParams(f"p must lie in [1, inf], got {self.p}")
        if self.max_iter < 1:
            raise BadParams("the iteration budget must be positive")
        for name in ("tau", "sigma"):
            step = getattr(self, name)
            if step is not None and not step > 0:
                raise BadParams(f"{name} must be positive, got {step}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_field(cls, field_: FieldND, g: GridFunction, **kwargs) -> "EnergyParams":
        """Sample the absolutely continuous part of a catalog field at the cell centres."""
        if field_.dimension != g.dimension:
            raise ShapeMismatch(f"{field_.name} lives in R^{field_.dimension}, the grid in R^{g.dimension}")
        if not field_.summable:
            logger.warning(f"{field_.name}: segment parts of A are invisible on the grid")
        centres = g.centres().reshape(-1, g.dimension)
        samples = np.array([field_.value(x) for x in centres], dtype=float)
        return cls(g, samples.reshape(g.shape + (g.dimension,)), **kwargs)

    @classmethod
    def constant(cls, g: GridFunction, direction: Optional[Sequence[float]] = None, **kwargs) -> "EnergyParams":
        """A ≡ direction (e₁ by default)."""
        n = g.dimension
        v = np.eye(n)[0]
        if direction is not None:
            v = np.asarray(direction, dtype=float)
            if v.shape != (n,):
                raise ShapeMismatch(f"direction {tuple(v)} is not in R^{n}")
        return cls(g, np.broadcast_to(v, g.shape + (n,)).copy(), **kwargs)

    @property
    def weights(self) -> np.ndarray:
        """|A| per cell."""
        return np.linalg.norm(self.samples, axis=-1)

    @property
    def frozen(self) -> np.ndarray:
        """Cells outside supp|A|, where the energy cannot see u − g."""
        return self.weights == 0.0
