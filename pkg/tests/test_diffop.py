from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dops, superfuns, weights
from ospcohom.contact import OSP_BASIS, Density, contact_bracket, decompose_osp, lie_density_fun
from ospcohom.diffop import (
    DOp,
    WeightMismatch,
    apply_fun,
    enumerate_basis,
    format_dform,
    format_dop,
    from_blocks,
    from_dform,
    lie_op,
    monomial_weight,
    op_apply,
    op_compose,
    op_weight,
    parse_dform,
    parse_dop,
    to_blocks,
    to_dform,
)
from ospcohom.superfield import ONE, THETA, X, ZERO, SuperFun, parse_superfun

half = Fraction(1, 2)
lam0, mu0 = Fraction(1, 3), Fraction(5, 6)


def sf(text):
    return parse_superfun(text)


def test_apply_examples():
    assert op_apply(DOp.etabar_power(2, lam0, mu0), Density(sf("x^3"), lam0)) == Density(sf("-3*x^2"), mu0)
    assert op_apply(DOp.mult(THETA, lam0, mu0), Density(ONE, lam0)) == Density(THETA, mu0)
    assert op_apply(DOp.etabar_power(1, lam0, mu0), Density(X + THETA, lam0)) == Density(ONE - THETA, mu0)


def test_apply_rejects_wrong_weight():
    with pytest.raises(WeightMismatch):
        op_apply(DOp.identity(lam0, mu0), Density(ONE, mu0))
    with pytest.raises(WeightMismatch):
        op_compose(DOp.identity(lam0, mu0), DOp.identity(lam0, mu0))


def test_compose_examples():
    e = DOp.etabar_power(1, 0)
    assert e @ e == DOp.etabar_power(2, 0)
    assert e @ DOp.mult(THETA, 0) == DOp(0, 0, {0: ONE, 1: -THETA})
    assert DOp.mult(X, 0) @ e == DOp(0, 0, {1: X})
    assert DOp.dx_power(1, 0) == -DOp.etabar_power(2, 0)


def test_lie_examples():
    lam = Fraction(3, 7)
    X1, Xx, _, Xt, _ = OSP_BASIS
    assert lie_op(X1, DOp.etabar_power(2, lam)) == DOp(lam, lam)
    for k in range(5):
        A = DOp.dx_power(k, lam0, mu0)
        assert lie_op(Xx, A) == A * (mu0 - lam0 - k)
    assert lie_op(Xt, DOp.mult(THETA, lam)) == DOp.identity(lam) * half


def test_weight_examples():
    for k in range(5):
        assert op_weight(DOp.dx_power(k, lam0, mu0)) == mu0 - lam0 - k
    keys = enumerate_basis(0, half, 0, 3).keys
    assert set(keys) == {(0, 0, 1), (0, 1, 2), (1, 0, 3)}
    assert enumerate_basis(0, Fraction(1, 3), 0, 6).keys == ()
    with pytest.raises(ValueError):
        enumerate_basis(0, 0, 0, -1)


@given(st.integers(0, 4), st.integers(0, 1), st.integers(0, 8), weights, weights)
def test_monomials_are_weight_vectors(a, e, j, lam, mu):
    A = DOp.monomial((a, e, j), lam, mu)
    assert lie_op(OSP_BASIS[1], A) == A * monomial_weight((a, e, j), lam, mu)


@settings(max_examples=60)
@given(dops(0, 0, 3, 2), dops(0, 0, 3, 2), superfuns(3))
def test_compose_matches_apply(A, B, G):
    assert apply_fun(A @ B, G) == apply_fun(A, apply_fun(B, G))


@settings(max_examples=40)
@given(dops(0, 0, 3, 2), dops(0, 0, 3, 2), dops(0, 0, 3, 2))
def test_compose_associative(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)


@settings(max_examples=60)
@given(dops(half, Fraction(2), 4, 2), superfuns(3), st.integers(0, 4))
def test_lie_op_is_equivariance_defect(A, G, gi):
    g = OSP_BASIS[gi]
    lam, mu = A.src, A.dst
    lhs = apply_fun(lie_op(g, A), G)
    rhs = ZERO
    for a, pa in A.parts():
        s = -1 if pa * g.parity else 1
        rhs = rhs + lie_density_fun(g.field, apply_fun(a, G), mu) - s * apply_fun(a, lie_density_fun(g.field, G, lam))
    assert lhs == rhs


@settings(max_examples=40)
@given(dops(Fraction(-1, 2), Fraction(1), 4, 2), st.integers(0, 4), st.integers(0, 4))
def test_operator_action_is_representation(A, i, j):
    a, b = OSP_BASIS[i], OSP_BASIS[j]
    s = -1 if a.parity * b.parity else 1
    lhs = lie_op(a, lie_op(b, A)) - s * lie_op(b, lie_op(a, A))
    rhs = DOp(A.src, A.dst)
    for k, c in decompose_osp(contact_bracket(a.gen, b.gen)).items():
        rhs = rhs + lie_op(OSP_BASIS[k], A) * c
    assert lhs == rhs


@given(dops(lam0, mu0, 5, 3), st.integers(0, 4))
def test_action_preserves_order(A, gi):
    assert lie_op(OSP_BASIS[gi], A).order <= A.order


@given(dops(lam0, mu0, 6, 3))
def test_round_trips(A):
    assert from_dform(to_dform(A), lam0, mu0) == A
    assert from_blocks(to_blocks(A), lam0, mu0) == A
    assert DOp.from_monomials(A.monomials(), lam0, mu0) == A
    assert parse_dop(format_dop(A), lam0, mu0) == A
    assert parse_dform(format_dform(A), lam0, mu0) == A


@given(dops(lam0, mu0, 4, 3), superfuns(3))
def test_blocks_act_componentwise(A, G):
    blocks = to_blocks(A)
    out = apply_fun(A, G)
    parts = (G.ev, G.od)
    for r, res in ((0, out.ev), (1, out.od)):
        total = ZERO.ev
        for s in (0, 1):
            for i, p in blocks[r, s].items():
                total = total + p * parts[s].deriv(i)
        assert total == res


def test_text_format():
    A = DOp(0, 0, {0: THETA, 2: X})
    assert format_dop(A) == "(x)*etabar^2 + (theta*(1))*etabar^0"
    assert format_dop(DOp(0, 0)) == "0"
    assert parse_dop("0", 0, 0) == DOp(0, 0)
