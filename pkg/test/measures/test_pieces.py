"""
Unit tests for analytic pieces, piecewise functions and selectors
"""

import math
from fractions import Fraction

import pytest

from core.errors import BadParams, NonIntegrablePiece
from measures import (
    BorelSet1D,
    Cauchy,
    Interval1D,
    LambdaSelector,
    Log,
    PiecewiseFunction1D,
    Poly,
    Power,
    Product,
    Recip,
)
from measures.pieces import piece_from_dict, simplify


class TestPieces:
    """Test cases for the closed-form piece families"""

    def test_polynomial_integral_is_rational(self):
        assert Poly((0, 1)).exact_integral(0, 1) == Fraction(1, 2)
        assert Poly((1, -3, 2)).exact_integral(0, Fraction(1, 2)) == Fraction(5, 24)

    def test_log_integral(self):
        assert Log(1, 0).integral(0, 1) == pytest.approx(-1.0, abs=1e-15)

    def test_cauchy_integral(self):
        assert Cauchy(1, 10, 0).integral(0, 1) == pytest.approx(math.atan(10), rel=1e-15)

    def test_power_integral(self):
        assert Power(1, 0, Fraction(-1, 2)).integral(0, 1) == pytest.approx(2.0)

    def test_reciprocal_not_integrable(self):
        with pytest.raises(NonIntegrablePiece):
            Recip(1, 0).integral(-1, 0)

    def test_reciprocal_limits(self):
        assert Recip(1, 0).limit(0, +1) == math.inf
        assert Recip(1, 0).limit(0, -1) == -math.inf

    def test_log_times_unit_simplifies(self):
        assert Log(1, 0).times(Poly.constant(1)) == Log(1, 0)
        assert Log(1, 0).derivative() == Recip(1, 0)

    def test_polynomial_divides_reciprocal(self):
        assert simplify(Product(Poly((0, 1)), Recip(1, 0))) == Poly.constant(1)

    def test_zero_times_infinity_limit(self):
        """x log x → 0 at the origin"""
        assert Product(Poly((0, 1)), Log(1, 0)).limit(0, +1) == 0.0

    def test_polynomial_roots(self):
        roots = Poly((-2, 0, 1)).solve(0.0, 0.0, 2.0)
        assert roots == [pytest.approx(math.sqrt(2), rel=1e-14)]

    def test_descriptor(self):
        piece = Cauchy(Fraction(3, 2), 100, 0)
        data = piece.to_dict()
        assert data == {"kind": "cauchy", "c": "3/2", "k": 100, "a": 0}
        assert piece_from_dict(data) == piece
        with pytest.raises(ValueError):
            piece_from_dict({"kind": "spline"})

    @pytest.mark.parametrize(
        "data,expected",
        [
            ({"kind": "recip", "coeffs": [2, 0.5]}, Recip(2, 0.5)),
            ({"kind": "recip", "coeffs": ["3/2"]}, Recip(Fraction(3, 2), 0)),
            ({"kind": "log", "coeffs": [-1, 1]}, Log(-1, 1)),
            ({"kind": "cauchy", "coeffs": [1, 10, 0.25]}, Cauchy(1, 10, 0.25)),
            ({"kind": "cauchy", "coeffs": [1, 10]}, Cauchy(1, 10, 0)),
        ],
    )
    def test_descriptor_with_coeffs(self, data, expected):
        assert piece_from_dict(data) == expected

    def test_descriptor_with_wrong_coeffs_length(self):
        with pytest.raises(ValueError):
            piece_from_dict({"kind": "cauchy", "coeffs": [1]})
        with pytest.raises(ValueError):
            piece_from_dict({"kind": "log", "coeffs": [1, 0, 2]})


class TestPiecewiseFunction:
    """Test cases for PiecewiseFunction1D"""

    def test_singular_points_become_breakpoints(self):
        u = PiecewiseFunction1D.from_piece(Interval1D(-1, 1), Log(1, 0))
        assert u.breakpoints == (0.0,)
        assert u.limits(0) == (-math.inf, -math.inf)

    def test_from_parts_fills_gaps(self):
        f = PiecewiseFunction1D.from_parts(Interval1D(0, 3), [(1, 2, Poly.constant(1))])
        assert f.breakpoints == (1, 2)
        assert f.pieces == (Poly.constant(0), Poly.constant(1), Poly.constant(0))

    def test_indicator_limits(self):
        chi = PiecewiseFunction1D.indicator(Interval1D(-1, 2), BorelSet1D.interval(0, 1))
        assert chi.limits(0) == (0.0, 1.0)
        assert chi.limits(1) == (1.0, 0.0)
        assert chi.value(Fraction(1, 2)) == 1

    def test_touching_intervals_fill_the_gap_point(self):
        E = BorelSet1D((Interval1D(0, 1), Interval1D(1, 2)))
        chi = PiecewiseFunction1D.indicator(Interval1D(-1, 3), E)
        assert chi.point_value(1) == 1

    def test_product_merges_breakpoints(self):
        domain = Interval1D(-1, 1)
        a = PiecewiseFunction1D.indicator(domain, BorelSet1D.interval(0, 1))
        b = PiecewiseFunction1D.from_piece(domain, Poly((0, 1)))
        product = a.times(b)
        assert product.breakpoints == (0,)
        assert product.value(Fraction(1, 2)) == Fraction(1, 2)

    def test_critical_levels(self):
        f = PiecewiseFunction1D.from_piece(Interval1D(-1, 1), Poly((0, 0, 1)))
        assert f.critical_levels() == [0.0, 1.0]

    def test_breakpoints_must_increase(self):
        with pytest.raises(BadParams):
            PiecewiseFunction1D(Interval1D(0, 1), (2,), (Poly.constant(0),) * 2)


class TestLambdaSelector:
    """Test cases for Borel selectors"""

    def test_precedence(self):
        lam = LambdaSelector(
            regions=((Interval1D(0, 1), Fraction(1, 4)),),
            overrides=((Fraction(1, 2), 1),),
            default=Fraction(1, 2),
        )
        assert lam.value(Fraction(1, 2)) == 1
        assert lam.value(Fraction(1, 4)) == Fraction(1, 4)
        assert lam.value(-Fraction(1, 2)) == Fraction(1, 2)
        assert lam.region_value(Fraction(1, 2)) == Fraction(1, 4)

    def test_complement(self):
        lam = LambdaSelector.at_point(0, Fraction(3, 10), default=Fraction(1, 5))
        complement = lam.complement()
        assert complement.value(0) == Fraction(7, 10)
        assert complement.value(1) == Fraction(4, 5)

    def test_values_outside_unit_interval(self):
        with pytest.raises(BadParams):
            LambdaSelector.constant(2)

    def test_indicator_of_intervals(self):
        lam = LambdaSelector.indicator_of_intervals([(0, 1), (2, 3)])
        assert lam.value(Fraction(1, 2)) == 1
        assert lam.value(1) == 0
        assert lam.boundaries(0) == [0.0, 1.0, 2.0, 3.0]

    def test_points_in_higher_dimension(self):
        lam = LambdaSelector(
            regions=((((0, 0), (1, 1)), Fraction(1, 3)),),
            overrides=(((0, 0), 1),),
        )
        assert lam.value((0, 0)) == 1
        assert lam.value((0.5, 0.5)) == Fraction(1, 3)
        assert lam.value((1.5, 0.5)) == 0

    def test_descriptor(self):
        lam = LambdaSelector(
            regions=((Interval1D(0, 1), Fraction(1, 4)),),
            overrides=((0, 1),),
            default=0,
        )
        assert LambdaSelector.from_dict(lam.to_dict()) == lam
