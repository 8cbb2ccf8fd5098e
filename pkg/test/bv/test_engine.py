"""
Unit tests for the one-dimensional pairing engine
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from bv import (
    ExtReal,
    approx_limits,
    compact_support_identity,
    derivative,
    distance_l1_A,
    gauss_green_1d,
    in_class_X,
    integration_by_parts_1d,
    lambda_representative,
    pairing_1d,
    seminorm_bva,
    truncate,
)
from core.config import load_settings
from core.errors import IndeterminateForm, NotBV, NotInBVA, NotIntegrable
from measures import (
    Arctan,
    BorelSet1D,
    Interval1D,
    LambdaSelector,
    Log,
    Measure1D,
    PiecewiseFunction1D,
    Poly,
    Power,
    Recip,
    is_close,
    mass,
    total_variation,
)

HALF = Fraction(1, 2)


@pytest.fixture
def domain():
    return Interval1D(-1, 1)


@pytest.fixture
def step(domain):
    """χ_(0,1) on (−1, 1)"""
    return PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))


@pytest.fixture
def log_abs(domain):
    return PiecewiseFunction1D.from_piece(domain, Log(1, 0))


def _two_sided(domain, left, right, at=0):
    return PiecewiseFunction1D(domain, (at,), (left, right))


class TestExtReal:
    """Test cases for extended-real arithmetic"""

    def test_zero_times_infinity(self):
        assert ExtReal(math.inf) * 0 == 0
        assert 0 * ExtReal(-math.inf) == 0

    def test_opposite_infinities(self):
        with pytest.raises(IndeterminateForm):
            ExtReal(math.inf) + ExtReal(-math.inf)


class TestRepresentatives:
    """Test cases for u⁻, u⁺ and u^λ"""

    def test_jump_limits(self, step):
        assert approx_limits(step, 0) == (0, 1)

    def test_infinite_limits(self, domain):
        u = _two_sided(
            domain,
            Power(-1, 0, Fraction(-1, 3), -1),
            Power(1, 0, Fraction(-1, 2)),
        )
        assert approx_limits(u, 0) == (-math.inf, math.inf)
        assert lambda_representative(u, LambdaSelector.constant(HALF), 0) == 0
        assert lambda_representative(u, LambdaSelector.constant(0.7), 0) == math.inf
        assert lambda_representative(u, LambdaSelector.constant(0.2), 0) == -math.inf

    def test_continuity_point(self, domain):
        u = PiecewiseFunction1D.from_piece(domain, Poly((1, 2)))
        lower, upper = approx_limits(u, 0.25)
        assert lower == upper == 1.5

    def test_convex_combination_at_jump(self, step):
        lam = LambdaSelector.at_point(0, 0.25)
        assert lambda_representative(step, lam, 0) == 0.25

    def test_infinite_one_side_with_zero_weight(self, domain):
        """0·(+∞) = 0 when λ = 0"""
        u = _two_sided(domain, Poly.constant(2), Power(1, 0, Fraction(-1, 2)))
        assert lambda_representative(u, LambdaSelector.constant(0), 0) == 2
        assert lambda_representative(u, LambdaSelector.constant(1), 0) == math.inf


class TestDerivative:
    """Test cases for Du"""

    def test_indicator(self):
        domain = Interval1D(-2, 2)
        chi = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(-1, 1))
        expected = Measure1D.build(domain, [(-1, 1), (1, -1)])
        assert derivative(chi) == expected

    def test_identity(self):
        unit = Interval1D(0, 1)
        u = PiecewiseFunction1D.from_piece(unit, Poly((0, 1)))
        assert derivative(u) == Measure1D.lebesgue(unit, unit)

    def test_log_not_bv(self, log_abs):
        with pytest.raises(NotBV):
            derivative(log_abs)


class TestClassX:
    """Test cases for membership in X^{A,λ}"""

    def test_log_against_shifted_step(self, domain, log_abs):
        A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(HALF, 1))
        certificate = in_class_X(log_abs, A, LambdaSelector.constant(0))
        assert certificate
        assert certificate.l1_divA == pytest.approx(math.log(2))

    def test_reciprocal_against_constant(self, domain):
        u = PiecewiseFunction1D.from_piece(domain, Recip(1, 0))
        A = PiecewiseFunction1D.constant(domain, 1)
        certificate = in_class_X(u, A, LambdaSelector.constant(0))
        assert not certificate
        assert certificate.divergent_term == "L1(|A|)"

    def test_bounded(self, domain, step):
        u = PiecewiseFunction1D.from_piece(domain, Poly((1, -1, 3)))
        assert in_class_X(u, step, LambdaSelector.constant(HALF))


class TestPairing:
    """Test cases for pairing_1d"""

    def test_log_example_is_exact(self, domain, log_abs):
        A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(HALF, 1))
        for t in (0, Fraction(1, 3), HALF, 1):
            result = pairing_1d(A, log_abs, LambdaSelector.constant(t))
            assert result.pairing.atoms == ()
            assert result.pairing.density == ((Interval1D(HALF, 1), Recip(1, 0)),)

    def test_constant_is_killed(self, domain, step):
        A = step.plus(PiecewiseFunction1D.from_piece(domain, Poly((0, 1, 1))))
        for c in (0, 3, Fraction(-7, 2)):
            u = PiecewiseFunction1D.constant(domain, c)
            for t in (0, 0.3, 1):
                result = pairing_1d(A, u, LambdaSelector.constant(t))
                assert total_variation(result.pairing) <= 1e-12

    def test_arctan_limit_atom(self, domain, step):
        """Limit of a·arctan(kx), b·arctan(kx) glued at 0"""
        a, b = 1.5, 0.5
        u = _two_sided(
            domain, Poly.constant(-b * math.pi / 2), Poly.constant(a * math.pi / 2)
        )
        for t in (0, 0.25, 0.75, 1):
            result = pairing_1d(step, u, LambdaSelector.at_point(0, t))
            expected = (1 - t) * (a + b) * math.pi / 2
            assert result.pairing.atom_weight(0) == pytest.approx(expected, abs=1e-12)
            assert result.pairing.density == ()

    def test_arctan_sequence_mass(self, domain, step):
        a, b = 0.5, 1.5
        for k in (1, 10, 10**6):
            u = _two_sided(domain, Arctan(b, k), Arctan(a, k))
            result = pairing_1d(step, u, LambdaSelector.constant(HALF))
            assert result.pairing.atoms == ()
            assert mass(result.pairing) == pytest.approx(a * math.atan(k), rel=1e-14)
        assert mass(result.pairing) == pytest.approx(a * math.pi / 2, abs=1e-6)

    def test_leibniz_audit(self, domain, step):
        u = _two_sided(domain, Poly((1, 2)), Poly((3, 0, -1)))
        result = pairing_1d(step, u, LambdaSelector.at_point(0, 0.4))
        assert result.leibniz_defect() <= 1e-14

    def test_lambda_difference(self, domain, step):
        u = _two_sided(domain, Poly((1, 2)), Poly((3, 0, -1)))
        first = pairing_1d(step, u, LambdaSelector.constant(0.2)).pairing
        second = pairing_1d(step, u, LambdaSelector.constant(0.9)).pairing
        lower, upper = approx_limits(u, 0)
        expected = (0.9 - 0.2) * (upper - lower) * 1
        assert (first - second).atom_weight(0) == pytest.approx(expected, abs=1e-12)

    def test_convex_combination(self, domain, step):
        u = _two_sided(domain, Poly((1, 2)), Poly((3, 0, -1)))
        zero = pairing_1d(step, u, LambdaSelector.constant(0)).pairing
        one = pairing_1d(step, u, LambdaSelector.constant(1)).pairing
        t = 0.35
        middle = pairing_1d(step, u, LambdaSelector.constant(t)).pairing
        combined = Measure1D.build(
            domain,
            [(x, (1 - t) * zero.atom_weight(x) + t * one.atom_weight(x)) for x in (0,)],
            zero.density,
        )
        assert is_close(middle, combined, tol=1e-12)

    def test_not_in_bva(self, domain, step):
        u = PiecewiseFunction1D.from_piece(domain, Power(1, -1, Fraction(-1, 2)))
        A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(-HALF, 1))
        result = pairing_1d(A, u, LambdaSelector.constant(0))
        assert result.pairing.atoms == ()
        B = PiecewiseFunction1D.constant(domain, 1)
        with pytest.raises(NotInBVA):
            pairing_1d(B, u, LambdaSelector.constant(0))

    def test_not_integrable(self, domain):
        u = PiecewiseFunction1D.from_piece(domain, Recip(1, 0))
        A = PiecewiseFunction1D.constant(domain, 1)
        with pytest.raises(NotIntegrable):
            pairing_1d(A, u, LambdaSelector.constant(0))


class TestCompactSupport:
    """∫ u^λ dDA = −(A, Du)_λ(Ω) for compactly supported u"""

    def test_randomized(self, domain):
        rng = np.random.default_rng(load_settings().seed)
        for _ in range(20):
            lo = Fraction(int(rng.integers(-7, 0)), 8)
            hi = Fraction(int(rng.integers(1, 8)), 8)
            u = PiecewiseFunction1D.from_parts(
                domain,
                [(lo, hi, Poly(tuple(int(c) for c in rng.integers(-4, 5, size=3))))],
            )
            jump = Fraction(int(rng.integers(-7, 8)), 8)
            A = PiecewiseFunction1D(
                domain,
                (jump,),
                (
                    Poly(tuple(int(c) for c in rng.integers(-3, 4, size=2))),
                    Poly(tuple(int(c) for c in rng.integers(-3, 4, size=3))),
                ),
            )
            lam = LambdaSelector(
                overrides=((lo, float(rng.random())), (hi, float(rng.random()))),
                default=float(rng.random()),
            )
            identity = compact_support_identity(A, u, lam)
            assert identity.residual <= 1e-12


class TestSeminormAndTruncation:
    """Test cases for the BV^A seminorm and T_k"""

    def test_seminorm_zero(self, domain):
        u = PiecewiseFunction1D.constant(domain, 0)
        A = PiecewiseFunction1D.constant(domain, 1)
        assert seminorm_bva(u, A) == 0

    def test_seminorm_indicator(self, domain):
        u = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, HALF))
        A = PiecewiseFunction1D.constant(domain, 1)
        assert seminorm_bva(u, A) == pytest.approx(2.5, abs=1e-15)

    def test_seminorm_identity(self):
        unit = Interval1D(0, 1)
        u = PiecewiseFunction1D.from_piece(unit, Poly((0, 1)))
        A = PiecewiseFunction1D.constant(unit, 1)
        assert seminorm_bva(u, A) == pytest.approx(1.5, abs=1e-15)

    def test_truncate_linear(self):
        u = PiecewiseFunction1D.from_piece(Interval1D(0, 2), Poly((0, 1)))
        clamped = truncate(u, 1)
        assert clamped.breakpoints == (1,)
        assert clamped.pieces == (Poly((0, 1)), Poly.constant(1))

    def test_truncate_bounded_is_identity(self, domain):
        u = PiecewiseFunction1D.from_piece(domain, Poly((0, 1)))
        assert truncate(u, 2) == u

    def test_truncate_inverse_square_root(self):
        u = PiecewiseFunction1D.from_piece(Interval1D(0, 1), Power(1, 0, Fraction(-1, 2)))
        clamped = truncate(u, 2)
        assert clamped.breakpoints == (0.25,)
        assert clamped.pieces == (Poly.constant(2), Power(1, 0, Fraction(-1, 2)))

    def test_distance(self, domain, step):
        u = PiecewiseFunction1D.constant(domain, 1)
        v = PiecewiseFunction1D.constant(domain, 0)
        assert distance_l1_A(u, v, step) == 1


class TestIntegrationByParts:
    """Test cases for the one-dimensional Gauss–Green and integration by parts"""

    @pytest.fixture
    def field(self):
        domain = Interval1D(-2, 2)
        return PiecewiseFunction1D(
            domain, (0,), (Poly((1, 1)), Poly((3, -1, 2)))
        )

    @pytest.mark.parametrize("t", [0, 0.3, 1])
    def test_gauss_green(self, field, t):
        E = BorelSet1D.interval(-1, 1)
        identity = gauss_green_1d(field, E, LambdaSelector.constant(t))
        assert identity.residual <= 1e-12

    @pytest.mark.parametrize("t", [0, 0.6, 1])
    def test_atom_on_boundary(self, t):
        domain = Interval1D(-1, 1)
        A = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))
        E = BorelSet1D.interval(0, HALF)
        identity = gauss_green_1d(A, E, LambdaSelector.at_point(0, t))
        assert identity.lhs == pytest.approx(t)
        assert identity.residual <= 1e-12

    @pytest.mark.parametrize("t2", [0, 0.5, 1])
    def test_integration_by_parts(self, field, t2):
        u = PiecewiseFunction1D(
            field.domain, (0, 1), (Poly((0, 1)), Poly((2, 0, 1)), Poly.constant(-1))
        )
        E = BorelSet1D((Interval1D(-1, HALF), Interval1D(HALF, Fraction(3, 2))))
        identity = integration_by_parts_1d(
            field, u, E, LambdaSelector.at_point(0, 0.25), LambdaSelector.constant(t2)
        )
        assert identity.residual <= 1e-12
