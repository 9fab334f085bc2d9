"""
Bivariate tropical polynomials P(x, y) = max (a_ij + i x + j y).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from tropica.utils.errors import MalformedInput
from tropica.utils.numbers import BOTTOM, TropicalNumber, trop_add, trop_mul, tropical

Exponent = Tuple[int, int]


def _check_exponent(e) -> Exponent:
    try:
        i, j = e
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"exponent must be a pair, got {e!r}") from exc
    for k in (i, j):
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise MalformedInput(f"exponents must be nonnegative integers, got {e!r}")
    return (i, j)


@dataclass(frozen=True)
class BiPoly:
    terms: Tuple[Tuple[Exponent, TropicalNumber], ...]

    @classmethod
    def from_terms(cls, terms) -> "BiPoly":
        items = terms.items() if isinstance(terms, dict) else terms
        merged: Dict[Exponent, TropicalNumber] = {}
        for e, a in items:
            e = _check_exponent(e)
            merged[e] = trop_add(merged.get(e, BOTTOM), tropical(a))
        pruned = tuple(sorted((e, a) for e, a in merged.items() if not a.is_bottom))
        if not pruned:
            raise MalformedInput("polynomial needs at least one finite coefficient")
        return cls(pruned)

    @property
    def coeffs(self) -> Dict[Exponent, TropicalNumber]:
        return dict(self.terms)

    @property
    def support(self) -> List[Exponent]:
        return [e for e, _ in self.terms]

    @property
    def degree(self) -> int:
        return max(i + j for i, j in self.support)

    @property
    def has_standard_support(self) -> bool:
        """True when a_00, a_d0 and a_0d are all finite."""
        d = self.degree
        return {(0, 0), (d, 0), (0, d)} <= set(self.support)

    def __str__(self):
        parts = []
        for (i, j), a in self.terms:
            mono = ("" if i == 0 else "x" if i == 1 else f"x^{i}") + \
                   ("" if j == 0 else "y" if j == 1 else f"y^{j}")
            c = f"({a})" if a.value < 0 else str(a)
            parts.append(c + mono)
        return "+".join(parts)


def monomial_values(P: BiPoly, point) -> Dict[Exponent, Fraction]:
    x, y = Fraction(point[0]), Fraction(point[1])
    return {(i, j): a.value + i * x + j * y for (i, j), a in P.terms}


def eval_bi(P: BiPoly, point) -> TropicalNumber:
    return TropicalNumber(max(monomial_values(P, point).values()))


def maximizing_monomials(P: BiPoly, point) -> List[Exponent]:
    """Exponents attaining the maximum at `point`; two or more means the point is on the curve."""
    values = monomial_values(P, point)
    top = max(values.values())
    return sorted(e for e, v in values.items() if v == top)


def multiply_bipolys(P: BiPoly, Q: BiPoly) -> BiPoly:
    """Tropical product: its curve is the union of both curves."""
    out: Dict[Exponent, TropicalNumber] = {}
    for (i, j), a in P.terms:
        for (k, l), b in Q.terms:
            e = (i + k, j + l)
            out[e] = trop_add(out.get(e, BOTTOM), trop_mul(a, b))
    return BiPoly.from_terms(out)
