"""
Tests for the energy minimizers
"""

import math

import numpy as np
import pytest

from core.errors import BudgetExceeded, ShapeMismatch
from tvmin import EnergyParams, GridFunction, coordinate_descent, energy, minimize
from tvmin.solver import _candidates


def _baseline(params):
    g = params.g.values
    return min(
        energy(g, params),
        energy(np.zeros_like(g), params),
        energy(np.full_like(g, g.mean()), params),
    )


def _monotone(trace):
    return all(b <= a for a, b in zip(trace, trace[1:]))


def _two_cells(p):
    g = GridFunction(np.array([0.0, 1.0]))
    return EnergyParams(g, np.ones((2, 1)), p=p)


class TestMinimize:
    def test_constant_datum(self):
        g = GridFunction(np.full((3, 3), 2.5), 0.5)
        result = minimize(EnergyParams.constant(g, p=2))
        assert result.converged
        assert np.array_equal(result.u.values, g.values)
        assert result.energy == 0.0

    def test_unpacks_as_pair(self):
        u_star, trace = minimize(_two_cells(1))
        assert isinstance(u_star, GridFunction)
        assert trace[-1] == pytest.approx(1.0, abs=1e-12)

    def test_two_cells_p2_closed_form(self):
        # |u₂ − u₁| + ‖u − g‖₂ is minimized at the mean with value |g₂ − g₁|/√2
        result = minimize(_two_cells(2))
        assert result.method == "primal-dual"
        assert result.energy == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-8)
        assert result.u.values == pytest.approx([0.5, 0.5], abs=1e-4)

    def test_two_cells_p1(self):
        result = minimize(_two_cells(1))
        assert result.energy == pytest.approx(1.0, abs=1e-12)

    def test_two_cells_sup_norm(self):
        result = minimize(_two_cells(math.inf))
        assert result.method == "sup-level search"
        assert result.energy == pytest.approx(0.5, abs=1e-9)

    def test_other_exponent(self, rng):
        g = GridFunction(rng.normal(size=(3, 3)), 1.0 / 3.0)
        params = EnergyParams.constant(g, direction=[1.0, 1.0], p=3, max_iter=3000)
        result = minimize(params)
        assert result.method == "subgradient"
        assert _monotone(result.trace)
        assert result.energy <= _baseline(params) + 1e-12

    @pytest.mark.parametrize("p", [1.0, 2.0, 1.5, math.inf])
    def test_post_conditions(self, rng, p):
        g = GridFunction(rng.normal(size=(4, 4)), 0.25)
        samples = rng.uniform(-1.0, 1.0, size=(4, 4, 2))
        params = EnergyParams(g, samples, p=p, max_iter=2000)
        result = minimize(params)
        assert _monotone(result.trace)
        assert result.energy <= _baseline(params) + 1e-12
        assert result.energy == pytest.approx(energy(result.u, params), abs=1e-12)

    def test_nothing_moves_without_field(self, rng):
        g = GridFunction(rng.normal(size=(3, 3)))
        result = minimize(EnergyParams(g, np.zeros((3, 3, 2))))
        assert np.array_equal(result.u.values, g.values)
        assert result.energy == 0.0

    def test_strict_budget(self, rng):
        g = GridFunction(rng.normal(size=(3, 3)))
        params = EnergyParams.constant(g, p=2, max_iter=1, strict=True)
        with pytest.raises(BudgetExceeded) as excinfo:
            minimize(params)
        assert isinstance(excinfo.value.best, GridFunction)
        assert excinfo.value.energy <= _baseline(params) + 1e-12

    def test_lenient_budget_returns_best(self, rng):
        g = GridFunction(rng.normal(size=(3, 3)))
        result = minimize(EnergyParams.constant(g, p=2, max_iter=1))
        assert not result.converged
        assert len(result.trace) == 2

    def test_start_shape(self):
        with pytest.raises(ShapeMismatch):
            minimize(_two_cells(2), start=GridFunction(np.zeros(3)))


class TestAgainstCoordinateDescent:
    """The primal–dual result never loses to cyclic coordinate descent"""

    @pytest.mark.parametrize("trial", range(5))
    def test_three_cells_1d(self, rng, trial):
        g = GridFunction(rng.normal(size=3))
        samples = rng.uniform(0.5, 1.5, size=(3, 1))
        params = EnergyParams(g, samples, p=2)
        _, oracle = coordinate_descent(params)
        assert minimize(params).energy <= oracle + 1e-4

    @pytest.mark.parametrize("trial", range(3))
    def test_three_by_three(self, rng, trial):
        g = GridFunction(rng.normal(size=(3, 3)), 1.0 / 3.0)
        samples = rng.uniform(-1.0, 1.0, size=(3, 3, 2))
        params = EnergyParams(g, samples, p=2)
        _, oracle = coordinate_descent(params)
        assert minimize(params).energy <= oracle + 1e-4

    def test_five_by_five_transversal(self, rng):
        g = GridFunction(rng.normal(size=(5, 5)), 0.2)
        params = EnergyParams.constant(g, p=2)
        _, oracle = coordinate_descent(params)
        result = minimize(params)
        assert _monotone(result.trace)
        assert result.energy <= oracle + 1e-4

    def test_oracle_never_increases(self, rng):
        g = GridFunction(rng.normal(size=4))
        params = EnergyParams(g, np.ones((4, 1)), p=2)
        u, value = coordinate_descent(params)
        assert value <= energy(g, params)
        assert value == pytest.approx(energy(u, params), abs=1e-12)


class TestFrozenCells:
    """Cells with |A| = 0 keep the datum"""

    @pytest.fixture
    def params(self):
        g = GridFunction(np.array([3.0, -1.0, 2.0, 5.0]), 0.25)
        samples = np.array([[1.0], [1.0], [0.0], [0.0]])
        return EnergyParams(g, samples, p=2)

    def test_candidates_start_at_the_datum(self, params):
        frozen = params.frozen
        assert frozen.tolist() == [False, False, True, True]
        candidates = _candidates(params)
        assert set(candidates) == {"g", "zero", "mean"}
        for values in candidates.values():
            assert np.array_equal(values[frozen], params.g.values[frozen])
        assert candidates["zero"][:2].tolist() == [0.0, 0.0]
        assert candidates["mean"][:2].tolist() == [2.25, 2.25]

    def test_candidates_leave_the_datum_untouched(self, params):
        before = params.g.values.copy()
        _candidates(params)["g"][0] = 100.0
        assert np.array_equal(params.g.values, before)

    @pytest.mark.parametrize("p", [1.0, 2.0, 1.5, math.inf])
    def test_minimizer_keeps_frozen_cells(self, params, p):
        params = EnergyParams(params.g, params.samples, p=p, max_iter=2000)
        result = minimize(params)
        assert np.array_equal(result.u.values[params.frozen], params.g.values[params.frozen])
        assert _monotone(result.trace)

    def test_start_is_frozen_at_the_datum(self, params):
        start = GridFunction(np.array([2.25, 2.25, 0.0, 0.0]), 0.25)
        result = minimize(params, start=start)
        assert result.u.values[2:].tolist() == [2.0, 5.0]
