"""Tropical curves: extraction, degree, balancing and reconstruction."""
import random
from fractions import Fraction

import pytest

from tests.strategies import LINE, WEIGHTED_CONIC
from tropica.utils.bipoly import BiPoly, eval_bi, maximizing_monomials
from tropica.utils.curves import (
    CurveEdge,
    CurveRay,
    TropicalCurve,
    check_balancing,
    curve_from_dual_description,
    curve_signature,
    degree,
    find_lift,
    translate_curve,
    tropical_curve,
)
from tropica.utils.errors import MalformedInput, NonRegularSubdivision
from tropica.utils.geometry import lattice_length
from tropica.utils.serialize import parse_bi
from tropica.utils.subdivision import dual_subdivision, subdivision_from_cells

F = Fraction


def test_line_fixture():
    C = tropical_curve(parse_bi(LINE))
    assert C.vertices == ((F(-3, 2), F(11, 2)),)
    assert not C.edges
    assert sorted(r.direction for r in C.rays) == [(-1, 0), (0, -1), (1, 1)]
    assert all(r.weight == 1 for r in C.rays)
    assert degree(C).degree == 1


def test_conic_vertices_and_edges(conic):
    C = tropical_curve(conic)
    assert set(C.vertices) == {(-1, 1), (-1, 2), (1, -1), (2, -1)}
    bounded = {frozenset((C.vertices[e.start], C.vertices[e.end])) for e in C.edges}
    assert bounded == {
        frozenset({(-1, 1), (-1, 2)}),
        frozenset({(-1, 1), (1, -1)}),
        frozenset({(1, -1), (2, -1)}),
    }
    assert len(C.rays) == 6
    report = degree(C)
    assert report.degree == 2 and report.standard_support


def test_vertices_are_corners(conic):
    C = tropical_curve(conic)
    for v in C.vertices:
        assert len(maximizing_monomials(conic, v)) >= 3
    assert eval_bi(conic, (-1, 1)).value == 3


def test_weighted_conic_has_two_weight_two_ends():
    C = tropical_curve(parse_bi(WEIGHTED_CONIC))
    heavy = [piece for _, piece in C.pieces() if piece.weight == 2]
    assert len(heavy) == 2
    assert check_balancing(C).ok


def test_collinear_support_gives_lines():
    C = tropical_curve(parse_bi("0+1x+0x^2"))
    assert not C.vertices and len(C.lines) == 2
    assert sorted(line.base for line in C.lines) == [(-1, 0), (1, 0)]
    assert all(line.direction in ((0, 1), (0, -1)) for line in C.lines)
    assert degree(C).degree == 0


def test_single_monomial_curve_is_empty():
    assert tropical_curve(parse_bi("3x^2y")).is_empty


def test_balancing_and_duality_on_random_polynomials(bipoly_corpus):
    for P in bipoly_corpus:
        C = tropical_curve(P)
        assert check_balancing(C).ok, str(P)
        for e in list(C.edges) + list(C.rays):
            assert e.weight == lattice_length(*e.dual)
        assert len(C.vertices) <= P.degree ** 2
        report = degree(C)
        assert report.degree == P.degree and report.standard_support
        assert set(report.direction_sums.values()) == {P.degree}


def _on_curve(C, p):
    return any(piece.contains(p) for _, piece in C.pieces())


def test_points_on_the_curve_are_exactly_the_corners(bipoly_corpus):
    rng = random.Random(3)
    for P in bipoly_corpus[:20]:
        C = tropical_curve(P)
        pieces = [piece for _, piece in C.pieces()]
        for _ in range(50):
            piece = rng.choice(pieces)
            if piece.is_bounded:
                s = piece.lo + (piece.hi - piece.lo) * F(rng.randint(1, 99), 100)
            else:
                s = F(rng.randint(1, 400), rng.randint(1, 7))
            p = piece.at(s)
            assert len(maximizing_monomials(P, p)) >= 2, (str(P), p)
            off = (F(rng.randint(-80, 80), rng.randint(1, 5)), F(rng.randint(-80, 80), rng.randint(1, 5)))
            assert _on_curve(C, off) == (len(maximizing_monomials(P, off)) >= 2), (str(P), off)


def test_unbalanced_graph_is_reported():
    C = TropicalCurve(vertices=((F(0), F(0)),), rays=(CurveRay(0, (1, 0), 1), CurveRay(0, (0, 1), 1)))
    report = check_balancing(C)
    assert not report.ok
    assert report.violations == [(0, (1, 1))]


@pytest.mark.parametrize("curve", [
    TropicalCurve(vertices=((F(0), F(0)),), rays=(CurveRay(0, (2, 0), 1),)),
    TropicalCurve(vertices=((F(0), F(0)), (F(1), F(0))), edges=(CurveEdge(0, 1, 1, (-1, 0)),)),
    TropicalCurve(vertices=((F(0), F(0)),), rays=(CurveRay(3, (1, 0), 1),)),
])
def test_malformed_graphs_raise(curve):
    with pytest.raises(MalformedInput):
        check_balancing(curve)


def test_translation_moves_every_vertex(conic):
    C = tropical_curve(conic)
    moved = translate_curve(C, (1, F(1, 2)))
    assert set(moved.vertices) == {(0, F(3, 2)), (0, F(5, 2)), (2, F(-1, 2)), (3, F(-1, 2))}
    assert check_balancing(moved).ok


def test_signature_ignores_labelling(conic):
    C = tropical_curve(conic)
    swapped = TropicalCurve(tuple(reversed(C.vertices)),
                            tuple(CurveEdge(3 - e.start, 3 - e.end, e.weight, e.direction) for e in C.edges),
                            tuple(CurveRay(3 - r.base, r.direction, r.weight) for r in C.rays))
    assert curve_signature(swapped) == curve_signature(C)


# --- reconstruction ---

def test_reconstruction_with_heights_recovers_the_curve(conic):
    C = tropical_curve(conic)
    S = dual_subdivision(conic)
    rebuilt = curve_from_dual_description(S, C.vertices[0], 0)
    assert rebuilt == C


def test_reconstruction_fixes_one_vertex(cubic):
    S = dual_subdivision(cubic)
    C = tropical_curve(cubic)
    target = (F(5), F(-7))
    rebuilt = curve_from_dual_description(S, target, 2)
    assert rebuilt.vertices[2] == target
    assert curve_signature(rebuilt) == curve_signature(translate_curve(C, (target[0] - C.vertices[2][0],
                                                                            target[1] - C.vertices[2][1])))


def test_reconstruction_of_a_single_cell():
    S = subdivision_from_cells([[(0, 0), (1, 0), (0, 1)]])
    C = curve_from_dual_description(S, (F(2), F(3)))
    assert C.vertices == ((2, 3),)
    assert sorted(r.direction for r in C.rays) == [(-1, 0), (0, -1), (1, 1)]


def test_reconstruction_without_heights_is_balanced():
    S = subdivision_from_cells([[(0, 0), (1, 0), (0, 1)], [(1, 0), (1, 1), (0, 1)]])
    C = curve_from_dual_description(S, (F(0), F(0)))
    assert len(C.vertices) == 2 and len(C.edges) == 1
    assert check_balancing(C).ok
    assert C.edge_length(0) == 1


def test_reconstruction_of_a_bare_picture(cubic):
    S = dual_subdivision(cubic)
    bare = subdivision_from_cells([c.points for c in S.cells])
    C = curve_from_dual_description(bare, (F(0), F(0)))
    assert check_balancing(C).ok
    assert len(C.vertices) == 9


def test_lift_reproduces_the_cells(cubic):
    S = dual_subdivision(cubic)
    bare = subdivision_from_cells([c.points for c in S.cells])
    heights = find_lift(bare)
    lifted = dual_subdivision(BiPoly.from_terms(heights))
    assert {frozenset(c.vertices) for c in lifted.cells} == {frozenset(c.vertices) for c in S.cells}


def test_reconstruction_reports_a_non_regular_subdivision():
    # the "mother" triangulation: a triangle inside a triangle, twisted
    cells = [
        [(0, 0), (4, 0), (1, 1)], [(4, 0), (0, 4), (2, 1)], [(0, 4), (0, 0), (1, 2)],
        [(1, 1), (4, 0), (2, 1)], [(2, 1), (0, 4), (1, 2)], [(1, 2), (0, 0), (1, 1)],
        [(1, 1), (2, 1), (1, 2)],
    ]
    S = subdivision_from_cells(cells)
    with pytest.raises(NonRegularSubdivision):
        curve_from_dual_description(S, (F(0), F(0)))


def test_reconstruction_rejects_degenerate_input():
    with pytest.raises(MalformedInput):
        curve_from_dual_description(dual_subdivision(BiPoly.from_terms({(0, 0): 0, (1, 0): 0})), (0, 0))
