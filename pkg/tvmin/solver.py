"""
Minimizers of the discrete energy.

p ∈ {1, 2}: primal–dual (Chambolle–Pock) iterations on
    min_u  F₁(K u) + F₂(D(u − g)),
with K u = A·∇_h u, F₁ = h^N‖·‖₁ and D = diag((|A| h^N)^{1/p}), F₂ = ‖·‖_p.
The dual variables are projected onto the ℓ_∞ ball of radius h^N and onto
the unit ball of the dual norm of ‖·‖_p.

Other finite p: subgradient descent with diminishing normalized steps.

p = ∞: a bounded scalar search over the sup level s of
    s + min{TV(u) : |u − g| ≤ s on supp|A|},
each inner problem solved by primal–dual iterations with a box projection.

Every method keeps the best iterate; cells outside supp|A| stay at g.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import optimize

from core.errors import BadParams, BudgetExceeded, ShapeMismatch

from .energy import energy, pairing_adjoint, pairing_density, tv_term
from .grid import EnergyParams, GridFunction

logger = logging.getLogger(__name__)


@dataclass
class SolverResult:
    """Best iterate, the non-increasing best-energy trace and convergence data."""

    u: GridFunction
    trace: List[float] = field(default_factory=list)
    residual: float = math.inf
    iterations: int = 0
    converged: bool = False
    method: str = ""

    @property
    def energy(self) -> float:
        return self.trace[-1]

    def __iter__(self):
        # unpacks as (u_star, trace)
        return iter((self.u, self.trace))


class _BestTracker:
    """Best iterate so far; record() appends the running minimum to the trace."""

    def __init__(self, params: EnergyParams):
        self.params = params
        self.values: Optional[np.ndarray] = None
        self.energy = math.inf
        self.trace: List[float] = []

    def offer(self, values: np.ndarray, value: Optional[float] = None) -> float:
        value = energy(values, self.params) if value is None else value
        if value < self.energy:
            self.energy = value
            self.values = values.copy()
        return value

    def record(self) -> None:
        self.trace.append(self.energy)


def operator_norm_bound(params: EnergyParams) -> float:
    """An upper bound of ‖[K; D]‖ from the per-axis sup of |A_j|."""
    h = params.g.spacing
    k_bound = sum(2.0 / h * float(np.abs(params.samples[..., j]).max()) for j in range(params.g.dimension))
    d_bound = 0.0
    if not math.isinf(params.p):
        d_bound = float((params.weights.max() * params.g.cell_volume) ** (1.0 / params.p))
    return math.hypot(k_bound, d_bound)


def _steps(params: EnergyParams) -> Tuple[float, float]:
    bound = operator_norm_bound(params)
    if bound == 0.0:
        return params.tau or 1.0, params.sigma or 1.0
    tau = params.tau or 0.99 / bound
    sigma = params.sigma or 0.99 / bound
    if tau * sigma * bound**2 >= 1.0:
        logger.warning(f"step sizes tau={tau:.3g}, sigma={sigma:.3g} exceed 1/‖K‖²; iterations may diverge")
    return tau, sigma


def _candidates(params: EnergyParams) -> Dict[str, np.ndarray]:
    """Starting points, each equal to g on the frozen cells."""
    g = params.g.values
    frozen = params.frozen
    candidates = {"g": g.copy(), "zero": np.zeros_like(g), "mean": np.full_like(g, g.mean())}
    for values in candidates.values():
        values[frozen] = g[frozen]
    return candidates


def _dual_projection(p: float) -> Callable[[np.ndarray], np.ndarray]:
    if p == 1.0:
        return lambda z: np.clip(z, -1.0, 1.0)
    if p == 2.0:
        return lambda z: z / max(1.0, float(np.linalg.norm(z)))
    raise BadParams(f"no dual projection for p={p}")


def _primal_dual(
    params: EnergyParams,
    tracker: _BestTracker,
    start: np.ndarray,
    budget: int,
    box: Optional[Tuple[np.ndarray, np.ndarray]] = None,
) -> Tuple[float, int, bool]:
    """
    Chambolle–Pock iterations from start; without box the fidelity enters
    through its dual, with box (lower, upper) only the TV term is minimized.

    Returns:
        (last primal–dual residual, iterations, converged)
    """
    g = params.g.values
    h = params.g.spacing
    volume = params.g.cell_volume
    frozen = params.frozen
    tau, sigma = _steps(params)
    fidelity = box is None
    if fidelity:
        project = _dual_projection(params.p)
        scale = (params.weights * volume) ** (1.0 / params.p)

    u = start.copy()
    u[frozen] = g[frozen]
    u_bar = u.copy()
    y = np.zeros_like(g)
    z = np.zeros_like(g)
    residual = math.inf
    for it in range(1, budget + 1):
        y_new = np.clip(y + sigma * pairing_density(u_bar, params.samples, h), -volume, volume)
        step = pairing_adjoint(y_new, params.samples, h)
        if fidelity:
            z_new = project(z + sigma * scale * (u_bar - g))
            step = step + scale * z_new
        u_new = u - tau * step
        if box is not None:
            u_new = np.clip(u_new, box[0], box[1])
        u_new[frozen] = g[frozen]

        residual = float(np.linalg.norm(u_new - u)) / tau + float(np.linalg.norm(y_new - y)) / sigma
        if fidelity:
            residual += float(np.linalg.norm(z_new - z)) / sigma
            z = z_new
            tracker.offer(u_new)
        else:
            tracker.offer(u_new, tv_term(u_new, params))
        tracker.record()
        u_bar = 2.0 * u_new - u
        u, y = u_new, y_new
        if residual <= params.tol:
            logger.debug(f"primal-dual converged after {it} iterations (residual {residual:.3g})")
            return residual, it, True
    return residual, budget, False


def _subgradient(values: np.ndarray, params: EnergyParams) -> np.ndarray:
    h = params.g.spacing
    volume = params.g.cell_volume
    density = pairing_density(values, params.samples, h)
    out = pairing_adjoint(volume * np.sign(density), params.samples, h)
    r = values - params.g.values
    mu = params.weights * volume
    norm = float((np.abs(r) ** params.p * mu).sum()) ** (1.0 / params.p)
    if norm > 0.0:
        out = out + mu * np.abs(r) ** (params.p - 1.0) * np.sign(r) / norm ** (params.p - 1.0)
    out[params.frozen] = 0.0
    return out


def _subgradient_descent(
    params: EnergyParams, tracker: _BestTracker, start: np.ndarray, patience: int = 500
) -> Tuple[float, int, bool]:
    g = params.g.values
    spread = float(g.max() - g.min()) or 1.0
    alpha = params.tau or 0.1 * spread
    u = start.copy()
    stalled = 0
    last_best = tracker.energy
    residual = math.inf
    for it in range(1, params.max_iter + 1):
        s = _subgradient(u, params)
        norm = float(np.linalg.norm(s))
        if norm == 0.0:
            tracker.record()
            return 0.0, it, True
        residual = alpha / math.sqrt(it)
        u = u - residual * s / norm
        tracker.offer(u)
        tracker.record()
        if tracker.energy < last_best - params.tol * (1.0 + abs(last_best)):
            last_best = tracker.energy
            stalled = 0
        else:
            stalled += 1
        if stalled >= patience:
            logger.debug(f"subgradient descent stagnated after {it} iterations")
            return residual, it, True
    return residual, params.max_iter, False


def _sup_level_search(params: EnergyParams, tracker: _BestTracker) -> Tuple[float, int, bool]:
    g = params.g.values
    support = ~params.frozen
    if not support.any():
        return 0.0, 0, True
    centre = float(g[support].mean())
    s_max = float(np.abs(g[support] - centre).max())
    inner_budget = max(1, params.max_iter // 40)
    counts = {"iterations": 0}

    def objective(s: float) -> float:
        lower = np.where(support, g - s, -np.inf)
        upper = np.where(support, g + s, np.inf)
        inner = _BestTracker(params)
        start = np.where(support, np.clip(np.full_like(g, centre), lower, upper), g)
        inner.offer(start, tv_term(start, params))
        _, used, _ = _primal_dual(params, inner, start, inner_budget, box=(lower, upper))
        counts["iterations"] += used
        tracker.offer(inner.values)
        tracker.record()
        return inner.energy + s

    result = optimize.minimize_scalar(
        objective,
        bounds=(0.0, s_max),
        method="bounded",
        options={"xatol": max(params.tol, 1e-12) * (1.0 + s_max), "maxiter": 40},
    )
    logger.debug(f"sup level search: s={result.x:.6g} after {result.nfev} inner solves")
    return max(0.0, float(result.fun) - tracker.energy), counts["iterations"], bool(result.success)


def minimize(params: EnergyParams, start: Optional[GridFunction] = None) -> SolverResult:
    """
    Minimize the discrete energy.

    The best of g, 0 and mean(g) seeds the trace, so the final energy never
    exceeds any of them.

    Args:
        params: Datum, field samples, exponent and solver controls
        start: Initial iterate (the best candidate when None)

    Returns:
        SolverResult with the best iterate and its non-increasing trace

    Raises:
        BudgetExceeded: If params.strict and the budget ran out first
    """
    tracker = _BestTracker(params)
    for values in _candidates(params).values():
        tracker.offer(values)
    if start is not None:
        if not start.matches(params.g):
            raise ShapeMismatch(f"start grid {start.shape} does not match {params.g.shape}")
        tracker.offer(np.where(params.frozen, params.g.values, start.values))
    tracker.record()
    initial = tracker.values.copy()

    p = params.p
    if math.isinf(p):
        method = "sup-level search"
        residual, iterations, converged = _sup_level_search(params, tracker)
    elif p in (1.0, 2.0):
        method = "primal-dual"
        residual, iterations, converged = _primal_dual(params, tracker, initial, params.max_iter)
    else:
        method = "subgradient"
        residual, iterations, converged = _subgradient_descent(params, tracker, initial)

    best = params.g.like(tracker.values)
    result = SolverResult(best, tracker.trace, residual, iterations, converged, method)
    logger.info(f"{method}: energy {result.energy:.10g} after {iterations} iterations")
    if not converged:
        if params.strict:
            raise BudgetExceeded(best, result.energy, residual)
        logger.warning(
            f"{method} used its budget of {params.max_iter} iterations "
            f"(residual {residual:.3g}); returning the best iterate"
        )
    return result


def coordinate_descent(
    params: EnergyParams, max_sweeps: int = 500, tol: float = 1e-12
) -> Tuple[GridFunction, float]:
    """
    Cyclic one-cell minimization to stagnation, an independent reference
    for small grids.

    Each cell value is searched in [min g − spread, max g + spread].
    """
    g = params.g.values
    spread = float(g.max() - g.min()) or 1.0
    bounds = (float(g.min()) - spread, float(g.max()) + spread)
    u = g.copy()
    best = energy(u, params)
    cells = [idx for idx in np.ndindex(*g.shape) if not params.frozen[idx]]
    for sweep in range(max_sweeps):
        before = best

        for idx in cells:
            def along(v: float, idx=idx) -> float:
                trial = u.copy()
                trial[idx] = v
                return energy(trial, params)

            result = optimize.minimize_scalar(along, bounds=bounds, method="bounded", options={"xatol": 1e-12})
            if result.fun < best:
                u[idx] = result.x
                best = float(result.fun)
        if before - best <= tol:
            logger.debug(f"coordinate descent stagnated after {sweep + 1} sweeps")
            break
    return params.g.like(u), best
