"""
Univariate tropical polynomials P(x) = max_i (a_i + i x).

Roots are the corners of the graph of P. A polynomial without constant
term has the factor "x", whose root is -inf; its order is the smallest
exponent present, so that every polynomial of degree d has d roots.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Tuple

from tropica.utils.errors import MalformedInput, PreconditionFailed
from tropica.utils.geometry import upper_chain
from tropica.utils.numbers import (
    BOTTOM,
    TROPICAL_ONE,
    TropicalNumber,
    trop_add,
    trop_mul,
    trop_pow,
    trop_sum,
    tropical,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UniPoly:
    """Exponent -> coefficient, sorted by exponent, -inf coefficients pruned."""
    terms: Tuple[Tuple[int, TropicalNumber], ...]

    @classmethod
    def from_terms(cls, terms) -> "UniPoly":
        """
        Build from a mapping or an iterable of (exponent, coefficient) pairs.
        Repeated exponents are added tropically.
        """
        items = terms.items() if isinstance(terms, dict) else terms
        merged: Dict[int, TropicalNumber] = {}
        for i, a in items:
            if isinstance(i, bool) or not isinstance(i, int) or i < 0:
                raise MalformedInput(f"exponent must be a nonnegative integer, got {i!r}")
            a = tropical(a)
            merged[i] = trop_add(merged.get(i, BOTTOM), a)
        pruned = tuple(sorted((i, a) for i, a in merged.items() if not a.is_bottom))
        if not pruned:
            raise MalformedInput("polynomial needs at least one finite coefficient")
        return cls(pruned)

    @property
    def coeffs(self) -> Dict[int, TropicalNumber]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return self.terms[-1][0]

    @property
    def min_exponent(self) -> int:
        return self.terms[0][0]

    @property
    def leading(self) -> TropicalNumber:
        return self.terms[-1][1]

    def coefficient(self, i: int) -> TropicalNumber:
        return self.coeffs.get(i, BOTTOM)

    def __str__(self):
        parts = []
        for i, a in self.terms:
            c = f"({a})" if a.value < 0 else str(a)
            parts.append(c if i == 0 else f"{c}x" if i == 1 else f"{c}x^{i}")
        return "+".join(parts)


class Root(NamedTuple):
    root: TropicalNumber
    order: int


def eval_uni(P: UniPoly, x: TropicalNumber) -> TropicalNumber:
    return trop_sum(trop_mul(a, trop_pow(x, i)) for i, a in P.terms)


def maximizing_exponents(P: UniPoly, x: TropicalNumber) -> List[int]:
    top = eval_uni(P, x)
    return [i for i, a in P.terms if trop_mul(a, trop_pow(x, i)) == top]


def _hull(P: UniPoly) -> list:
    return upper_chain((Fraction(i), a.value) for i, a in P.terms)


def canonicalize(P: UniPoly) -> UniPoly:
    """
    The largest polynomial with the same function: the concave majorant of
    the points (i, a_i) read off at every integer between the extreme exponents.
    """
    hull = _hull(P)
    terms = {int(hull[0][0]): hull[0][1]}
    for (i0, a0), (i1, a1) in zip(hull, hull[1:]):
        slope = (a1 - a0) / (i1 - i0)
        for i in range(int(i0) + 1, int(i1) + 1):
            terms[i] = a0 + slope * (i - i0)
    return UniPoly.from_terms({i: TropicalNumber(a) for i, a in terms.items()})


def roots_uni(P: UniPoly) -> List[Root]:
    """Roots with orders, ascending, -inf first; the orders sum to the degree."""
    hull = _hull(P)
    roots = []
    if P.min_exponent > 0:
        roots.append(Root(BOTTOM, P.min_exponent))
    for (i0, a0), (i1, a1) in zip(hull, hull[1:]):
        roots.append(Root(TropicalNumber(-(a1 - a0) / (i1 - i0)), int(i1 - i0)))
    logger.debug("roots of %s: %s", P, roots)
    return roots


def factor_uni(P: UniPoly) -> Tuple[TropicalNumber, List[Root]]:
    """P = "a_d * prod (x + r)^k" as functions."""
    return P.leading, roots_uni(P)


def trop_poly_mul(P: UniPoly, Q: UniPoly) -> UniPoly:
    """Max-plus convolution of coefficient sequences."""
    out: Dict[int, TropicalNumber] = {}
    for i, a in P.terms:
        for j, b in Q.terms:
            out[i + j] = trop_add(out.get(i + j, BOTTOM), trop_mul(a, b))
    return UniPoly.from_terms(out)


def linear_factor(root: TropicalNumber) -> UniPoly:
    """"x + r", or plain "x" for the root -inf."""
    if root.is_bottom:
        return UniPoly.from_terms({1: TROPICAL_ONE})
    return UniPoly.from_terms({0: root, 1: TROPICAL_ONE})


def expand_linear_factors(leading: TropicalNumber, roots: Iterable) -> UniPoly:
    leading = tropical(leading)
    if leading.is_bottom:
        raise MalformedInput("leading coefficient must be finite")
    result = UniPoly.from_terms({0: leading})
    for root, order in roots:
        if order <= 0:
            raise MalformedInput(f"root order must be positive, got {order}")
        factor = linear_factor(tropical(root))
        for _ in range(order):
            result = trop_poly_mul(result, factor)
    return result


def quotient_by_root(P: UniPoly, root: TropicalNumber, order: int = None) -> UniPoly:
    """
    Q with P = "(x + root)^order Q" as functions; `order` defaults to the full
    order of the root.
    """
    leading, roots = factor_uni(P)
    found = {r.root: r.order for r in roots}
    if root not in found:
        raise PreconditionFailed("not-a-root", root=str(root))
    order = found[root] if order is None else order
    if not 0 < order <= found[root]:
        raise PreconditionFailed("order-exceeds-multiplicity", root=str(root), order=order)
    remaining = [(r, k - order if r == root else k) for r, k in roots]
    return expand_linear_factors(leading, [(r, k) for r, k in remaining if k > 0])


def breakpoint_roots(P: UniPoly) -> List[Root]:
    """
    Finite roots found by brute force: intersect every pair of monomial lines
    and keep the crossings where the maximum is attained twice.
    """
    found = {}
    for i, a in P.terms:
        for j, b in P.terms:
            if i < j:
                x = TropicalNumber((a.value - b.value) / (j - i))
                exps = maximizing_exponents(P, x)
                if len(exps) >= 2:
                    found[x] = max(exps) - min(exps)
    return [Root(x, k) for x, k in sorted(found.items())]
