from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ospcohom.linalg import Echelon, kernel, rank

entries = st.integers(-3, 3).map(Fraction)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.lists(st.lists(entries, min_size=r, max_size=r), min_size=1, max_size=max_cols)
    )


def as_sparse(col):
    return {i: v for i, v in enumerate(col) if v}


@settings(max_examples=80)
@given(matrices())
def test_rank_matches_sympy(cols):
    M = sympy.Matrix([[sympy.Rational(c[i].numerator, c[i].denominator) for c in cols] for i in range(len(cols[0]))])
    assert rank(as_sparse(c) for c in cols) == M.rank()


@settings(max_examples=80)
@given(matrices())
def test_kernel_vectors(cols):
    sparse = [as_sparse(c) for c in cols]
    ker = kernel(sparse)
    assert len(ker) + rank(sparse) == len(cols)
    for v in ker:
        total = {}
        for j, a in v.items():
            for i, x in sparse[j].items():
                total[i] = total.get(i, 0) + a * x
        assert all(x == 0 for x in total.values())
    assert rank(ker) == len(ker)


@given(matrices())
def test_solve_reproduces_target(cols):
    e = Echelon()
    for j, c in enumerate(cols):
        e.add(as_sparse(c), tag=j)
    target = {}
    for j, c in enumerate(cols):
        for i, x in as_sparse(c).items():
            target[i] = target.get(i, 0) + (j + 1) * x
    sol = e.solve({k: v for k, v in target.items() if v})
    assert sol is not None
    rebuilt = {}
    for j, a in sol.items():
        for i, x in as_sparse(cols[j]).items():
            rebuilt[i] = rebuilt.get(i, 0) + a * x
    assert {k: v for k, v in rebuilt.items() if v} == {k: v for k, v in target.items() if v}


def test_independent_and_dependent():
    e = Echelon()
    assert e.add({0: Fraction(1)}, "a") is None
    assert e.add({1: Fraction(2)}, "b") is None
    rel = e.add({0: Fraction(3), 1: Fraction(4)}, "c")
    assert rel is not None
    assert e.rank == 2
    assert e.contains({0: Fraction(1), 1: Fraction(1)})
    assert not e.contains({2: Fraction(1)})
    assert e.solve({2: Fraction(1)}) is None
