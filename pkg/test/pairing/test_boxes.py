"""
Unit tests for box sets and step functions
"""

import math

import pytest

from core.errors import BadParams
from measures.selector import LambdaSelector
from pairing import BOUNDARY, EXTERIOR, INTERIOR, BoxGrid, BoxSet, StepFunctionND

WINDOW = ((-2.0, -2.0), (2.0, 2.0))


@pytest.fixture
def square():
    return BoxSet.cube(0.0, 1.0, 2)


class TestBoxSet:
    """Combinatorial measure theory of box unions"""

    def test_rejects_empty_box(self):
        with pytest.raises(BadParams):
            BoxSet.box((0.0, 1.0), (1.0, 1.0))

    def test_densities(self, square):
        assert square.density((0.5, 0.5)) == 1.0
        assert square.density((0.0, 0.5)) == 0.5
        assert square.density((0.0, 0.0)) == 0.25
        assert square.density((1.5, 0.5)) == 0.0

    def test_classify(self, square):
        assert square.classify((0.5, 0.5)) == INTERIOR
        assert square.classify((1.0, 0.3)) == BOUNDARY
        assert square.classify((1.0, 1.0)) == BOUNDARY
        assert square.classify((3.0, 0.0)) == EXTERIOR

    def test_shared_face_is_interior(self, square):
        E = square.union(BoxSet.box((-1.0, 0.0), (0.0, 1.0)))
        assert E.density((0.0, 0.5)) == 1.0
        assert E.density((0.0, 0.0)) == 0.5

    def test_boundary_area(self, square):
        assert square.boundary_area(WINDOW) == pytest.approx(4.0)
        E = square.union(BoxSet.box((-1.0, 0.0), (0.0, 1.0)))
        assert E.boundary_area(WINDOW) == pytest.approx(6.0)

    def test_boundary_faces_outward_normals(self, square):
        faces = square.boundary_faces(WINDOW)
        normals = {(face[0][axis], axis): sign for face, axis, sign in faces}
        assert normals[(0.0, 0)] == -1
        assert normals[(1.0, 0)] == 1
        assert normals[(0.0, 1)] == -1
        assert normals[(1.0, 1)] == 1

    def test_complement_and_measure(self, square):
        rest = square.complement(WINDOW)
        assert rest.lebesgue_measure(WINDOW) == pytest.approx(15.0)
        assert square.intersection_measure(rest, WINDOW) == 0.0
        assert rest.density((0.0, 0.5)) == 0.5

    def test_intersection_measure(self, square):
        other = BoxSet.box((0.5, 0.5), (2.0, 2.0))
        assert square.intersection_measure(other) == pytest.approx(0.25)

    def test_half_space(self):
        H = BoxSet.half_space(2, 1, 0.0, 1)
        assert not H.is_bounded()
        assert H.contains((5.0, 1.0))
        assert H.density((3.0, 0.0)) == 0.5
        assert H.lebesgue_measure() == math.inf

    def test_compactly_inside(self, square):
        assert square.is_compactly_inside(*WINDOW)
        assert not square.is_compactly_inside((0.0, 0.0), (2.0, 2.0))

    def test_disjoint_resolves_overlap(self):
        E = BoxSet(2, (((0, 0), (2, 1)), ((1, 0), (3, 1))))
        assert E.disjoint().lebesgue_measure() == pytest.approx(3.0)
        assert E.indicator().value((1.5, 0.5)) == 1.0

    def test_dict_round_trip_with_half_space(self):
        data = {"dimension": 2, "boxes": [{"lo": [0, 0], "hi": [1, 1]}], "half_spaces": [{"axis": 0, "offset": 5}]}
        E = BoxSet.from_dict(data)
        assert E.contains((0.5, 0.5))
        assert E.contains((6.0, -100.0))
        assert BoxSet.from_dict(BoxSet.cube(0, 1, 2).to_dict()) == BoxSet.cube(0, 1, 2)


class TestBoxGrid:
    """Grid cells and faces"""

    def test_cells_and_faces(self):
        grid = BoxGrid((0.0, 0.0), (2.0, 1.0), {0: [1.0, 5.0]})
        assert len(list(grid.cells())) == 2
        assert list(grid.face_cells(0)) == [((1.0, 0.0), (1.0, 1.0))]
        assert len(list(grid.face_cells(0, include_window=True))) == 3
        assert list(grid.face_cells(1)) == []


class TestStepFunction:
    """Step functions on boxes"""

    def test_limits_and_representative(self):
        u = StepFunctionND(2, ((2.0, ((0, 0), (1, 1))), (-1.0, ((-1, 0), (0, 1)))))
        assert u.limits((0.0, 0.5)) == (-1.0, 2.0)
        lam = LambdaSelector.constant(0.25)
        assert u.representative((0.0, 0.5), lam, on_face=True) == pytest.approx(-0.25)
        assert u.representative((0.5, 0.5), lam) == 2.0

    def test_point_override_only_off_faces(self):
        u = BoxSet.cube(0.0, 1.0, 2).indicator()
        lam = LambdaSelector.at_point((0.0, 0.0), 0.9, default=0.1)
        assert u.representative((0.0, 0.0), lam) == pytest.approx(0.9)
        assert u.representative((0.0, 0.0), lam, on_face=True) == pytest.approx(0.1)

    def test_levels_and_superlevel(self):
        u = StepFunctionND(2, ((1.0, ((0, 0), (2, 1))), (1.0, ((1, 0), (2, 1)))))
        window = ((-1.0, -1.0), (3.0, 2.0))
        assert u.levels(window) == [0.0, 1.0, 2.0]
        top = u.superlevel(1.5, window)
        assert top.lebesgue_measure(window) == pytest.approx(1.0)
        assert top.contains((1.5, 0.5))

    def test_plus_and_scale(self):
        a = BoxSet.cube(0, 1, 2).indicator()
        b = BoxSet.cube(0, 1, 2).indicator(3.0)
        assert a.plus(b).scale(0.5).value((0.5, 0.5)) == pytest.approx(2.0)

    def test_dict_round_trip(self):
        u = StepFunctionND(2, ((1.5, ((0, 0), (1, 1))),))
        assert StepFunctionND.from_dict(u.to_dict()) == u
