"""Shared fixture polynomials, hypothesis strategies and seeded random corpora."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from tropica.utils.bipoly import BiPoly
from tropica.utils.numbers import BOTTOM, TropicalNumber
from tropica.utils.univariate import UniPoly

CONIC = "3+2x+2y+3xy+x^2+y^2"
LINE = "1/2+2x+(-5)y"
WEIGHTED_CONIC = "0+x+y+y^2+(-1)x^2"
STANDARD_LINE = "0+0x+0y"

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)
finite_numbers = rationals.map(TropicalNumber)
tropical_numbers = st.one_of(st.just(BOTTOM), finite_numbers)


@st.composite
def uni_polys(draw, max_degree=12):
    exponents = draw(st.sets(st.integers(0, max_degree), min_size=1, max_size=max_degree + 1))
    return UniPoly.from_terms({i: draw(finite_numbers) for i in exponents})


def random_bipoly(rng: random.Random, degree: int, density: float = 0.7) -> BiPoly:
    """Polynomial of the given degree with a_00, a_d0, a_0d always present."""
    corners = {(0, 0), (degree, 0), (0, degree)}
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if (i, j) in corners or rng.random() < density:
                terms[(i, j)] = Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3)))
    return BiPoly.from_terms(terms)


def unimodular_cubic() -> BiPoly:
    """Heights -(i^2 + ij + j^2) cut the degree-3 triangle into nine unit triangles."""
    return BiPoly.from_terms({(i, j): -(i * i + i * j + j * j) for i in range(4) for j in range(4 - i)})


@st.composite
def bipolys(draw, max_degree=2):
    """Random polynomial with the three corner monomials, so its curve has degree d."""
    d = draw(st.integers(1, max_degree))
    corners = {(0, 0), (d, 0), (0, d)}
    coefficient = st.fractions(min_value=-6, max_value=6, max_denominator=2)
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            if (i, j) in corners or draw(st.booleans()):
                terms[(i, j)] = draw(coefficient)
    return BiPoly.from_terms(terms)
