"""Hypothesis strategies for exact polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from qdl.algebra import VARIABLES, GaussRational, MPoly

small_fraction = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
gauss = st.builds(GaussRational, small_fraction, small_fraction)
real_gauss = st.builds(GaussRational, small_fraction)


def polys(variables=("x", "y"), max_terms=5, max_exp=4, coeffs=gauss):
    n = len(variables)
    mono = st.tuples(*[st.integers(0, max_exp)] * n)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(
        lambda d: MPoly(variables, d))


full_polys = polys(VARIABLES, max_terms=6, max_exp=5)
