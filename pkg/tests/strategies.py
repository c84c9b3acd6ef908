"""Hypothesis strategies for exact scalars and multilinear objects."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from homnambu.multilinear import PForm, SkewMap
from homnambu.scalar import ParameterContext, Poly
from homnambu.space import LinearMap, TraceFunctional

PARAMS = ParameterContext(("b", "c"))

small_ints = st.integers(min_value=-3, max_value=3)
fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polys(draw, max_terms=3, max_exp=2):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp)),
        fractions, max_size=max_terms))
    return Poly.make(PARAMS.names, terms)


scalars = st.one_of(fractions, polys())


def vectors(d, elems=small_ints):
    return st.tuples(*[elems.map(Fraction)] * d)


@st.composite
def skew_maps(draw, d, n, density=0.5):
    table = {}
    for key in itertools.combinations(range(d), n):
        if draw(st.floats(0, 1)) < density:
            table[key] = draw(vectors(d))
    return SkewMap(d, n, table)


@st.composite
def pforms(draw, d, p, density=0.6):
    table = {}
    for key in itertools.combinations(range(d), p):
        if draw(st.floats(0, 1)) < density:
            table[key] = Fraction(draw(small_ints))
    return PForm(d, p, table)


def covectors(d):
    return vectors(d).map(TraceFunctional)


def linear_maps(d, elems=st.integers(-1, 1)):
    return st.tuples(*[vectors(d, elems)] * d).map(LinearMap)
