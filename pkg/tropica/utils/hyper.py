"""
Evaluation in the tropical hyperfield, where a tie between the largest
monomials makes the sum the whole ray below it.
"""

from fractions import Fraction

from tropica.utils.curves import CurveRay, TropicalCurve
from tropica.utils.errors import MalformedInput
from tropica.utils.numbers import BOTTOM, DownSet, TropicalNumber, hyper_sum, trop_mul, trop_pow, tropical
from tropica.utils.univariate import UniPoly


def hyper_eval_uni(P: UniPoly, x: TropicalNumber) -> DownSet:
    """Pairwise hyperfield fold of the monomial values a_i + i x."""
    x = tropical(x)
    return hyper_sum(trop_mul(a, trop_pow(x, i)) for i, a in P.terms)


def is_hyper_root(P: UniPoly, x: TropicalNumber) -> bool:
    return hyper_eval_uni(P, x).contains(BOTTOM)


def line_graph_with_tail(a: TropicalNumber, b: TropicalNumber) -> TropicalCurve:
    """
    The multivalued graph {(x, y) | y in (a + x) [+] b}: the graph of
    max(a + x, b) plus the vertical ray below its corner at x = b - a.
    """
    a, b = tropical(a), tropical(b)
    if a.is_bottom or b.is_bottom:
        raise MalformedInput("line_graph_with_tail needs finite a and b")
    corner = (Fraction(b.value - a.value), Fraction(b.value))
    rays = (
        CurveRay(0, (-1, 0), 1),
        CurveRay(0, (0, -1), 1),
        CurveRay(0, (1, 1), 1),
    )
    return TropicalCurve(vertices=(corner,), rays=rays, vertex_cells=(0,))
