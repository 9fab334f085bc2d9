from fractions import Fraction

import pytest

from tropica.utils.errors import MalformedInput
from tropica.utils.geometry import (
    Piece,
    all_collinear,
    convex_hull,
    is_primitive,
    lattice_length,
    lattice_points_on_segment,
    point_in_polygon,
    polygon_area,
    primitive,
    upper_chain,
)


@pytest.mark.parametrize("v, expected", [
    ((4, -6), (2, -3)),
    ((Fraction(1, 2), Fraction(1, 3)), (3, 2)),
    ((0, -5), (0, -1)),
])
def test_primitive(v, expected):
    assert primitive(v) == expected
    assert is_primitive(expected)


def test_zero_vector_has_no_direction():
    with pytest.raises(MalformedInput):
        primitive((0, 0))


def test_lattice_length_and_points():
    assert lattice_length((0, 0), (0, 2)) == 2
    assert lattice_length((2, 0), (0, 2)) == 2
    assert lattice_length((1, 0), (0, 2)) == 1
    assert lattice_points_on_segment((0, 0), (0, 2)) == [(0, 0), (0, 1), (0, 2)]
    with pytest.raises(MalformedInput):
        lattice_length((0, 0), (Fraction(1, 2), 0))


def test_convex_hull_is_counter_clockwise_without_collinear_points():
    square = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1), (0, 1)]
    assert convex_hull(square) == [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert convex_hull([(0, 0), (1, 1), (3, 3)]) == [(0, 0), (3, 3)]


def test_upper_chain_keeps_the_higher_value():
    assert upper_chain([(0, 0), (1, -1), (2, 0), (1, 3), (1, 2)]) == [(0, 0), (1, 3), (2, 0)]
    assert upper_chain([(0, 0), (1, 1), (2, 2)]) == [(0, 0), (2, 2)]


def test_area_and_collinearity():
    assert polygon_area([(0, 0), (2, 0), (0, 2)]) == 2
    assert polygon_area([(0, 0), (1, 0)]) == 0
    assert all_collinear([(0, 0), (1, 2), (2, 4)])
    assert not all_collinear([(0, 0), (1, 2), (2, 5)])


def test_point_in_polygon():
    triangle = [(0, 0), (4, 0), (0, 4)]
    assert point_in_polygon((1, 1), triangle)
    assert point_in_polygon((2, 2), triangle)          # on the boundary
    assert not point_in_polygon((3, 3), triangle)
    assert not point_in_polygon((Fraction(-1, 2), 1), triangle)


def test_piece_parameters():
    ray = Piece((Fraction(1), Fraction(1)), (1, 1), Fraction(0), None)
    assert ray.contains((Fraction(5), Fraction(5)))
    assert not ray.contains((Fraction(0), Fraction(0)))
    assert ray.param_of((Fraction(3), Fraction(2))) is None
    edge = Piece((Fraction(0), Fraction(0)), (1, 0), Fraction(0), Fraction(2))
    assert edge.endpoints() == [(0, 0), (2, 0)]
    assert edge.contains_param(Fraction(2)) and not edge.contains_param(Fraction(2), strict=True)
    assert edge.translated((1, 1)).base == (1, 1)
