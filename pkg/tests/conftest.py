import random

import pytest

from tests.strategies import CONIC, random_bipoly, unimodular_cubic
from tropica.utils.serialize import parse_bi


@pytest.fixture(scope="session")
def bipoly_corpus():
    rng = random.Random(20240501)
    return [random_bipoly(rng, rng.randint(1, 5)) for _ in range(200)]


@pytest.fixture(scope="session")
def bezout_corpus():
    rng = random.Random(7)
    return [(random_bipoly(rng, rng.randint(1, 4)), random_bipoly(rng, rng.randint(1, 4))) for _ in range(200)]


@pytest.fixture
def conic():
    return parse_bi(CONIC)


@pytest.fixture
def cubic():
    return unimodular_cubic()
