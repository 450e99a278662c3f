import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pisoliton.fixtures import example_structure
from pisoliton.frame import ricci_of
from pisoliton.scalar import ParamSet, Scalar

PQR = ParamSet(("p", "q", "r"))

fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))


@st.composite
def scalars(draw, params: ParamSet = PQR, max_terms: int = 4, max_exp: int = 2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in params.names)
        terms[mono] = draw(fractions)
    return Scalar(params, terms)


@pytest.fixture(scope="session")
def example():
    s = example_structure()
    conn, curv = ricci_of(s.frame)
    return s, conn, curv


@pytest.fixture
def rng():
    return random.Random(20261016)


def F(x) -> Fraction:
    return Fraction(x)
