"""
Tests for explicit pairing measures and (A, λ)-perimeters
"""

import math

import pytest

from core.errors import NoClosedForm
from fields import MeasureND, catalog, distance, mass, restrict, unit_ball_volume
from measures.selector import LambdaSelector
from pairing import (
    BoxSet,
    alternating_partial_sum,
    chi_lambda,
    pairing_measure_box,
    perimeter,
    perimeter_estimate,
    restrict_to_reduced_boundary,
    staircase_set,
    weight_by_lambda,
)

ORIGIN2 = (0.0, 0.0)


class TestPairingMeasureBox:
    """(A, Dχ_E)_λ read off from the Leibniz rule"""

    def test_constant_field_unit_square(self):
        field = catalog("constant")
        E = BoxSet.cube(0.0, 1.0, 2)
        mu = pairing_measure_box(field, E, LambdaSelector.constant(0.5))
        expected = MeasureND.on_box((0.0, 0.0), (0.0, 1.0), 1.0) + MeasureND.on_box((1.0, 0.0), (1.0, 1.0), -1.0)
        assert distance(mu, expected) <= 1e-12
        assert not mu.atoms

    def test_constant_field_parallel_half_space(self):
        field = catalog("constant")
        E = BoxSet.half_space(2, 1, 0.0)
        assert pairing_measure_box(field, E, LambdaSelector.constant(0.3)).is_zero()

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("lam0", [0.0, 0.25, 0.5, 1.0])
    def test_radial_atom(self, n, lam0):
        field = catalog("radial", {"dimension": n})
        E = BoxSet.cube(0.0, 1.0, n)
        origin = (0.0,) * n
        mu = pairing_measure_box(field, E, LambdaSelector.at_point(origin, lam0))
        assert mu.atom_weight(origin) == 1.0 / 2**n - lam0
        assert len(mu.atoms) <= 1

    def test_radial_faces(self, integrator):
        field = catalog("radial")
        E = BoxSet.cube(0.0, 1.0, 2)
        mu = pairing_measure_box(field, E, LambdaSelector.constant(0.0))
        # the faces {x_j = 1} together carry −1/2^N
        faces = restrict(mu, (1.0, -1.0), (1.0, 2.0), closed=True) + restrict(mu, (-1.0, 1.0), (2.0, 1.0), closed=True)
        assert mass(faces, integrator=integrator) == pytest.approx(-0.25, abs=1e-9)
        x = (1.0, 0.3)
        part = next(p for p in mu.parts if p.lo[0] == 1.0 and p.hi[0] == 1.0 and p.lo[1] <= 0.3 <= p.hi[1])
        expected = -(1.0 / (2 * unit_ball_volume(2))) / (1.0 + 0.3**2)
        assert part.density(x) == pytest.approx(expected, rel=1e-12)

    def test_heaviside_face_split_by_lambda(self):
        field = catalog("heaviside")
        E = BoxSet.cube(0.0, 1.0, 2)
        mu = pairing_measure_box(field, E, LambdaSelector.constant(0.3))
        face = restrict(mu, (-0.5, -1.0), (0.5, 2.0))
        assert mass(face) == pytest.approx(0.7)

    def test_support_on_boundary(self):
        field = catalog("heaviside")
        E = BoxSet.box((-1.0, -1.0), (1.0, 0.0))
        mu = pairing_measure_box(field, E, LambdaSelector.constant(0.0))
        for part in mu.parts:
            assert E.classify(part.centre()) != "interior"
        assert mass(mu) == pytest.approx(-1.0)

    def test_vortex_has_no_closed_form(self):
        with pytest.raises(NoClosedForm):
            pairing_measure_box(catalog("vortex"), BoxSet.cube(0.0, 0.5, 2), LambdaSelector.constant(0.5))

    def test_segment_jumps_of_lambda(self):
        field = catalog("segment")
        E = BoxSet.half_space(2, 1, 0.0)
        lam = LambdaSelector.indicator_of_intervals([(-0.5, 0.25)], axis=0, dimension=2)
        mu = pairing_measure_box(field, E, lam)
        assert mu.atom_weight((-0.5, 0.0)) == pytest.approx(1.0)
        assert mu.atom_weight((0.25, 0.0)) == pytest.approx(-1.0)
        assert not mu.parts


class TestPerimeter:
    """P_{A,λ}(E, Ω) = |(A, Dχ_E)_λ|(Ω)"""

    def test_unit_square_constant_field(self, integrator):
        field = catalog("constant")
        assert perimeter(field, BoxSet.cube(0.0, 1.0, 2), LambdaSelector.constant(0.5), integrator=integrator) == pytest.approx(2.0)

    def test_package_attribute_is_the_function(self):
        import pairing
        from pairing.measure import perimeter as measure_perimeter

        assert pairing.perimeter is measure_perimeter
        value = pairing.perimeter(catalog("constant"), BoxSet.cube(0.0, 1.0, 2), LambdaSelector.constant(0.25))
        assert value == pytest.approx(2.0)

    def test_degenerate_half_space(self):
        field = catalog("constant")
        assert perimeter(field, BoxSet.half_space(2, 1, 0.0), LambdaSelector.constant(0.5)) == 0.0

    def test_staircase_strips(self, integrator):
        depth = 5
        field = catalog("staircase", {"depth": depth})
        g = field.param_map["g"]
        E = staircase_set(depth)
        expected = (1.0 - 2.0 ** (-depth - 1)) * g(0.0) + 0.5 * g(1.0)
        expected += sum(g(alternating_partial_sum(n)) * 2.0 ** (-n - 1) for n in range(1, depth + 1))
        value = perimeter(field, E, LambdaSelector.constant(0.5), integrator=integrator)
        assert value == pytest.approx(expected, rel=1e-8)

    def test_estimate_is_exact_with_closed_form_traces(self, integrator):
        result = perimeter_estimate(catalog("constant"), BoxSet.cube(0.0, 1.0, 2), LambdaSelector.constant(0.5), integrator=integrator)
        assert not result.lower_bound_only
        assert result.value == pytest.approx(2.0)

    def test_vortex_lower_bound(self, integrator):
        # the face fluxes of (−x₂, x₁)/|x|² on (1/4, 3/4)² have total variation log 9
        E = BoxSet.cube(0.25, 0.75, 2)
        result = perimeter_estimate(catalog("vortex"), E, LambdaSelector.constant(0.5), integrator=integrator)
        assert result.lower_bound_only
        assert result.dictionary_size > 0
        assert 0.0 < result.value <= math.log(9.0) + 1e-8


class TestHelpers:
    """χ_E^λ, λμ and μ ⌞ ∂*E"""

    def test_chi_lambda(self):
        E = BoxSet.cube(0.0, 1.0, 2)
        lam = LambdaSelector.constant(0.4)
        assert chi_lambda(E, lam, (0.5, 0.5)) == 1.0
        assert chi_lambda(E, lam, (0.0, 0.5)) == pytest.approx(0.4)
        assert chi_lambda(E, lam, (2.0, 0.5)) == 0.0

    def test_restrict_and_weight(self):
        E = BoxSet.cube(0.0, 1.0, 2)
        mu = MeasureND.on_box((0.0, -2.0), (0.0, 2.0), 1.0) + MeasureND.dirac((0.5, 0.5), 3.0) + MeasureND.dirac(ORIGIN2, 2.0)
        trace = restrict_to_reduced_boundary(mu, E)
        assert mass(trace) == pytest.approx(3.0)
        weighted = weight_by_lambda(trace, LambdaSelector.at_point(ORIGIN2, 1.0, default=0.5))
        assert mass(weighted) == pytest.approx(0.5 + 2.0)
        assert math.isclose(weighted.atom_weight(ORIGIN2), 2.0)
