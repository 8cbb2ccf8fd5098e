"""
Tests for the staircase Gauss–Green check
"""

import math

import pytest

from core.errors import BadParams
from fields import catalog
from pairing import alternating_partial_sum, staircase_check, staircase_set
from pairing.staircase import strip_band


class TestStaircaseSet:
    def test_partial_sums(self):
        assert alternating_partial_sum(0) == 1.0
        assert alternating_partial_sum(1) == 2.0
        assert alternating_partial_sum(2) == 1.5
        assert alternating_partial_sum(2000) == pytest.approx(1.0 + math.log(2.0), abs=1e-3)

    def test_strip_band(self):
        assert strip_band(1) == (0.5, 0.75)
        assert strip_band(3) == (0.875, 0.9375)

    def test_boxes(self):
        E = staircase_set(3)
        assert len(E.boxes) == 4
        assert E.boxes[2] == ((0.0, 0.75), (1.5, 0.875))

    def test_higher_dimension(self):
        E = staircase_set(2, dimension=3)
        assert E.boxes[0] == ((0.0, 0.0, 0.0), (1.0, 0.5, 1.0))

    @pytest.mark.parametrize("depth, dimension", [(0, 2), (3, 1)])
    def test_bad_params(self, depth, dimension):
        with pytest.raises(BadParams):
            staircase_set(depth, dimension)


class TestStaircaseCheck:
    """The gap closes like g(0)·2^{−K−1} and stays under the analytic bound"""

    def test_residual_shrinks(self, integrator):
        field = catalog("staircase")
        reports = [staircase_check(field, depth, integrator=integrator) for depth in (5, 10, 20)]
        residuals = [r.residual for r in reports]
        assert residuals[0] > residuals[1] > residuals[2]
        for report in reports:
            assert report.within_bound
            assert report.residual == pytest.approx(0.5625 * 2.0 ** (-report.depth - 1), rel=1e-6)

    def test_lhs_matches_closed_form(self, integrator):
        field = catalog("staircase")
        g = field.param_map["g"]
        report = staircase_check(field, 4, integrator=integrator)
        expected = 0.5 * (g.value(1.0) - g.value(0.0)) + sum(
            (strip_band(n)[1] - strip_band(n)[0]) * (g.value(alternating_partial_sum(n)) - g.value(0.0))
            for n in range(1, 5)
        )
        assert report.lhs == pytest.approx(expected, abs=1e-10)

    def test_field_without_profiles(self, integrator):
        with pytest.raises(BadParams):
            staircase_check(catalog("constant"), 3, integrator=integrator)
