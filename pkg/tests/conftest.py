"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from ospcohom.diffop import DOp
from ospcohom.superfield import Poly, SuperFun

# exact arithmetic has uneven running times; a wall-clock deadline only adds noise
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

small_rats = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)
weights = st.builds(Fraction, st.integers(min_value=-8, max_value=8), st.sampled_from([1, 2, 3, 4]))


def polys(max_degree=4):
    return st.lists(small_rats, max_size=max_degree + 1).map(Poly)


def superfuns(max_degree=4):
    return st.builds(SuperFun, polys(max_degree), polys(max_degree))


def homogeneous_superfuns(max_degree=4):
    return st.one_of(
        polys(max_degree).map(lambda p: SuperFun(p, Poly())),
        polys(max_degree).map(lambda p: SuperFun(Poly(), p)),
    )


def dops(src, dst, max_order=4, max_degree=3):
    return st.dictionaries(
        st.integers(min_value=0, max_value=max_order), superfuns(max_degree), max_size=4
    ).map(lambda t: DOp(src, dst, t))
