"""
The discrete energy |A·∇_h u| h^N summed over cells plus the L^p(|A|)
fidelity, and the discrete BV^A seminorm.

∇_h uses forward differences; the difference normal to the last layer of
cells is zero, so the discrete pairing A·∇_h u stays a linear map of u.
"""

import math
from typing import Union

import numpy as np

from core.errors import ShapeMismatch

from .grid import EnergyParams, GridFunction

Values = Union[GridFunction, np.ndarray]


def grad(values: np.ndarray, h: float) -> np.ndarray:
    """Forward differences, shape (N, *shape); zero on the last layer of each axis."""
    out = np.zeros((values.ndim,) + values.shape)
    for axis in range(values.ndim):
        moved = np.moveaxis(out[axis], axis, 0)
        moved[:-1] = np.diff(np.moveaxis(values, axis, 0), axis=0) / h
    return out


def grad_adjoint(q: np.ndarray, h: float) -> np.ndarray:
    """The transpose of grad, i.e. minus the discrete divergence."""
    out = np.zeros(q.shape[1:])
    for axis in range(q.shape[0]):
        src = np.moveaxis(q[axis], axis, 0)
        dst = np.moveaxis(out, axis, 0)
        if src.shape[0] == 1:
            continue
        dst[0] -= src[0]
        dst[1:-1] += src[:-2] - src[1:-1]
        dst[-1] += src[-2]
    return out / h


def pairing_density(values: np.ndarray, samples: np.ndarray, h: float) -> np.ndarray:
    """A·∇_h u per cell."""
    return np.einsum("...j,j...->...", samples, grad(values, h))


def pairing_adjoint(y: np.ndarray, samples: np.ndarray, h: float) -> np.ndarray:
    """The transpose of u ↦ A·∇_h u applied to a cell array."""
    return grad_adjoint(np.moveaxis(samples * y[..., None], -1, 0), h)


def _values(u: Values, params: EnergyParams) -> np.ndarray:
    if isinstance(u, GridFunction):
        if not u.matches(params.g):
            raise ShapeMismatch(
                f"grid {u.shape} with spacing {u.spacing} does not match "
                f"{params.g.shape} with spacing {params.g.spacing}"
            )
        return u.values
    values = np.asarray(u, dtype=float)
    if values.shape != params.g.shape:
        raise ShapeMismatch(f"shape {values.shape} differs from {params.g.shape}")
    return values


def tv_term(u: Values, params: EnergyParams) -> float:
    h = params.g.spacing
    density = pairing_density(_values(u, params), params.samples, h)
    return float(np.abs(density).sum() * params.g.cell_volume)


def fidelity_term(u: Values, params: EnergyParams) -> float:
    """‖u − g‖ in L^p(|A| L^N); the essential supremum on supp|A| for p = ∞."""
    residual = np.abs(_values(u, params) - params.g.values)
    weights = params.weights
    if math.isinf(params.p):
        support = weights > 0
        return float(residual[support].max()) if support.any() else 0.0
    total = float((residual**params.p * weights).sum() * params.g.cell_volume)
    return total ** (1.0 / params.p)


def energy(u: Values, params: EnergyParams) -> float:
    """
    Σ_cells |A·∇_h u| h^N + (Σ_cells |u − g|^p |A| h^N)^{1/p}.

    Raises:
        ShapeMismatch: If u does not live on the grid of the datum
    """
    return tv_term(u, params) + fidelity_term(u, params)


def divergence_density(samples: np.ndarray, h: float) -> np.ndarray:
    """Central differences of A, one-sided on the boundary layer."""
    n = samples.shape[-1]
    out = np.zeros(samples.shape[:-1])
    for axis in range(n):
        if samples.shape[axis] > 1:
            out += np.gradient(samples[..., axis], h, axis=axis)
    return out


def seminorm_grid(u: GridFunction, samples: np.ndarray) -> float:
    """‖u‖_{L¹(|A|)} + ‖u‖_{L¹(|div A|)} + Σ_cells |A·∇_h u| h^N."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != u.shape + (u.dimension,):
        raise ShapeMismatch(f"field samples {samples.shape} do not match {u.shape}")
    h, volume = u.spacing, u.cell_volume
    magnitude = np.abs(u.values)
    l1_A = float((magnitude * np.linalg.norm(samples, axis=-1)).sum() * volume)
    l1_divA = float((magnitude * np.abs(divergence_density(samples, h))).sum() * volume)
    tv = float(np.abs(pairing_density(u.values, samples, h)).sum() * volume)
    return l1_A + l1_divA + tv
