"""
Tests for the coarea checker
"""

import pytest

from coarea import (
    coarea_check,
    coarea_check_nd,
    coarea_inequality,
    random_coarea_scenario,
    slice_measure,
)
from core.errors import BadParams, HypothesisFailed
from fields import bump, catalog
from fields.profiles import BumpProfile
from measures import BorelSet1D, Interval1D, LambdaSelector, PiecewiseFunction1D, Poly
from pairing import BoxSet, StepFunctionND

BUMP_MASS = 32.0 / 35.0


@pytest.fixture
def unit():
    return Interval1D(0, 1)


@pytest.fixture
def jump_field():
    """A = χ_(0,1) on (−1, 1), so DA = δ₀"""
    return PiecewiseFunction1D.indicator(Interval1D(-1, 1), BorelSet1D.interval(0, 1))


class TestSliceMeasure:
    def test_identity_slice_is_dirac(self, unit):
        u = PiecewiseFunction1D.from_piece(unit, Poly.linear(1))
        A = PiecewiseFunction1D.constant(unit, 1)
        mu = slice_measure(A, u, LambdaSelector.constant(0.5), 0.25)
        assert mu.atoms == ((0.25, 1.0),)
        assert mu.density == ()

    def test_lambda_weights_jump_of_field(self, jump_field):
        lam = LambdaSelector.at_point(0.0, 0.3)
        mu = slice_measure(jump_field, jump_field, lam, 0.5)
        assert float(mu.atom_weight(0.0)) == pytest.approx(0.7)


class TestCoareaCheck:
    def test_identity_function(self, unit):
        u = PiecewiseFunction1D.from_piece(unit, Poly.linear(1))
        A = PiecewiseFunction1D.constant(unit, 1)
        phi = BumpProfile(0.5, 0.3, 1.0, 3)
        report = coarea_check(A, u, LambdaSelector.constant(0.2), phi)
        assert report.lhs == pytest.approx(0.3 * BUMP_MASS, abs=1e-10)
        assert report.residual <= 1e-10

    def test_step_against_jump(self, jump_field):
        lam = LambdaSelector.at_point(0.0, 0.3)
        phi = BumpProfile(0.0, 0.5, 1.0, 3)
        report = coarea_check(jump_field, jump_field, lam, phi)
        assert report.lhs == pytest.approx(0.7, abs=1e-12)
        assert report.residual <= 1e-10
        assert report.exceptional_levels == []

    def test_constant_u(self, unit):
        u = PiecewiseFunction1D.constant(unit, 3)
        A = PiecewiseFunction1D.from_piece(unit, Poly.linear(1))
        report = coarea_check(A, u, LambdaSelector.constant(0.5), BumpProfile(0.5, 0.3, 1.0, 3))
        assert report.lhs == pytest.approx(0.0, abs=1e-14)
        assert report.rhs == 0.0

    def test_randomized_equality(self, rng):
        for _ in range(20):
            scenario = random_coarea_scenario(rng)
            report = coarea_check(scenario.A, scenario.u, scenario.lam, scenario.phi)
            assert report.residual <= 1e-8

    def test_hypothesis_violation(self, jump_field):
        u = PiecewiseFunction1D(Interval1D(-1, 1), (0,), (Poly((1, 0, 1)), Poly.constant(2)))
        lam = LambdaSelector.at_point(0.0, 0.3)
        phi = BumpProfile(0.0, 0.5, 1.0, 3)
        with pytest.raises(HypothesisFailed) as info:
            coarea_check(jump_field, u, lam, phi)
        assert info.value.t == 1.0
        assert info.value.mass == pytest.approx(1.0)

        report = coarea_check(jump_field, u, lam, phi, strict=False)
        assert report.exceptional_levels == [1.0]
        assert report.lhs == pytest.approx(0.7, abs=1e-12)
        assert report.residual <= 1e-9

    def test_support_must_fit(self, unit):
        u = PiecewiseFunction1D.from_piece(unit, Poly.linear(1))
        A = PiecewiseFunction1D.constant(unit, 1)
        with pytest.raises(BadParams):
            coarea_check(A, u, LambdaSelector.constant(0.5), BumpProfile(0.9, 0.3, 1.0, 3))


class TestCoareaInequality:
    def test_equality_for_monotone_u(self, unit):
        u = PiecewiseFunction1D.from_piece(unit, Poly.linear(1))
        A = PiecewiseFunction1D.constant(unit, 1)
        rows = coarea_inequality(A, u, LambdaSelector.constant(0.5), [(0.1, 0.4), (0.0, 1.0)])
        assert [row.lhs for row in rows] == pytest.approx([0.3, 1.0])
        assert [row.rhs for row in rows] == pytest.approx([0.3, 1.0], abs=1e-9)
        assert all(row.holds and not row.strict for row in rows)


class TestCoareaND:
    def test_nested_boxes(self, integrator):
        u = StepFunctionND(
            2,
            (
                (1.0, ((-0.5, -0.5), (0.5, 0.5))),
                (1.0, ((0.0, -0.5), (0.5, 0.5))),
            ),
        )
        report = coarea_check_nd(
            catalog("heaviside"), u, LambdaSelector.constant(0.5), bump((0.1, 0.0), 0.8), integrator=integrator
        )
        assert report.levels == [0.0, 1.0, 2.0]
        assert report.residual <= 1e-8

    def test_corner_atom_fails_hypothesis(self, integrator):
        u = BoxSet.cube(0.0, 0.5, 2).indicator()
        lam = LambdaSelector.constant(0.5)
        phi = bump((0.0, 0.0), 0.8)
        with pytest.raises(HypothesisFailed) as info:
            coarea_check_nd(catalog("radial"), u, lam, phi, integrator=integrator)
        assert info.value.mass == pytest.approx(1.0)

        report = coarea_check_nd(catalog("radial"), u, lam, phi, strict=False, integrator=integrator)
        assert report.exceptional_levels == [0.0]
        assert report.residual <= 1e-8
