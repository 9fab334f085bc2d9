"""Dual subdivisions of Newton polygons."""
from fractions import Fraction

import pytest

from tests.strategies import WEIGHTED_CONIC
from tropica.utils.errors import MalformedInput
from tropica.utils.serialize import parse_bi
from tropica.utils.subdivision import dual_subdivision, subdivision_from_cells


def cell_sets(S):
    return {frozenset(c.vertices) for c in S.cells}


def test_conic_is_four_unit_triangles(conic):
    S = dual_subdivision(conic)
    assert cell_sets(S) == {
        frozenset({(0, 0), (1, 0), (1, 1)}),
        frozenset({(0, 0), (1, 1), (0, 1)}),
        frozenset({(0, 1), (1, 1), (0, 2)}),
        frozenset({(1, 0), (2, 0), (1, 1)}),
    }
    assert all(c.area == Fraction(1, 2) for c in S.cells)
    assert len(S.interior_edges()) == 3
    assert len(S.boundary_edges()) == 6


def test_weighted_conic_has_a_long_boundary_segment():
    S = dual_subdivision(parse_bi(WEIGHTED_CONIC))
    index = S.edge_index()
    assert ((0, 0), (0, 2)) in index
    segment = S.edges[index[((0, 0), (0, 2))]]
    assert segment.weight == 2
    assert segment.is_boundary
    holder = S.cells[segment.cells[0]]
    assert (0, 1) in holder.points


def test_unimodular_cubic(cubic):
    S = dual_subdivision(cubic)
    assert len(S.cells) == 9
    assert sum(c.area for c in S.cells) == Fraction(9, 2)
    assert all(len(c.vertices) == 3 for c in S.cells)


def test_equal_heights_give_one_cell():
    S = dual_subdivision(parse_bi("0+0x+0y+0xy+0x^2+0y^2"))
    assert len(S.cells) == 1
    assert set(S.cells[0].points) == {(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)}
    assert S.edges and all(e.is_boundary for e in S.edges)


def test_collinear_support_is_degenerate():
    S = dual_subdivision(parse_bi("0+1x+0x^2"))
    assert S.degenerate
    assert [c.vertices for c in S.cells] == [((0, 0), (1, 0)), ((1, 0), (2, 0))]


def test_single_monomial_has_no_cells():
    S = dual_subdivision(parse_bi("5xy"))
    assert S.degenerate and not S.cells and not S.edges


def test_subdivision_properties_on_random_polynomials(bipoly_corpus):
    for P in bipoly_corpus:
        S = dual_subdivision(P)
        d = P.degree
        assert sum(c.area for c in S.cells) == Fraction(d * d, 2)
        assert len(S.cells) <= d * d
        for e in S.edges:
            assert len(e.cells) in (1, 2)


def test_from_cells_builds_the_picture():
    S = subdivision_from_cells([[(0, 0), (1, 0), (0, 1)], [(1, 0), (1, 1), (0, 1)]])
    assert len(S.cells) == 2
    assert len(S.interior_edges()) == 1
    assert S.heights is None


def test_from_cells_rejects_gaps_and_flat_cells():
    with pytest.raises(MalformedInput):
        subdivision_from_cells([[(0, 0), (2, 0), (0, 2)], [(2, 0), (2, 2), (0, 2)], [(0, 0), (1, 0), (0, 1)]])
    with pytest.raises(MalformedInput):
        subdivision_from_cells([[(0, 0), (1, 0), (2, 0)]])
