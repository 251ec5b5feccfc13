from fractions import Fraction

import pytest
from hypothesis import given

from conftest import polys, small_rats, superfuns
from ospcohom.superfield import (
    ONE,
    THETA,
    X,
    ZERO,
    Poly,
    SuperFun,
    ddx,
    dtheta,
    eta,
    eta_pow,
    etabar,
    etabar_pow,
    format_poly,
    format_superfun,
    parse_poly,
    parse_superfun,
)
from ospcohom.syntax import ParseError, format_rat, parse_rat


def sf(text):
    return parse_superfun(text)


# -- worked values ----------------------------------------------------------


def test_addition_examples():
    assert SuperFun(Poly([0, 1])) + SuperFun(Poly(), Poly([1])) == X + THETA
    F = sf("x^2 + theta*(x)")
    assert F + ZERO == F
    assert sf("x^2 + theta*(1)") + sf("-x^2") == THETA
    assert (sf("x^2 + theta*(1)") + sf("-x^2")).ev == Poly()


def test_product_examples():
    assert THETA * THETA == ZERO
    assert X * THETA == THETA * X == sf("theta*(x)")
    assert (ONE + THETA) * (ONE + THETA) == sf("1 + theta*(2)")


def test_derivative_examples():
    assert ddx(sf("x^2 + theta*(x)")) == sf("2*x + theta*(1)")
    assert dtheta(sf("theta*(x^3)")) == sf("x^3")
    assert dtheta(sf("x^3")) == ZERO


def test_eta_examples():
    assert etabar(sf("x^2")) == sf("theta*(-2*x)")
    assert etabar(THETA) == ONE
    assert eta(ONE) == ZERO
    assert eta(sf("x^2")) == sf("theta*(2*x)")


def test_parity():
    assert ZERO.parity == 0
    assert X.parity == 0
    assert THETA.parity == 1
    assert (X + THETA).parity is None
    assert [p for _, p in (X + THETA).parts()] == [0, 1]


# -- laws -------------------------------------------------------------------


@given(superfuns())
def test_etabar_squared_is_minus_dx(F):
    assert etabar(etabar(F)) == -ddx(F)
    assert etabar_pow(F, 2) == -ddx(F)


@given(superfuns())
def test_eta_squared_is_dx(F):
    assert eta(eta(F)) == ddx(F)
    assert eta_pow(F, 4) == ddx(ddx(F))


@given(superfuns())
def test_eta_and_etabar_anticommute(F):
    assert eta(etabar(F)) + etabar(eta(F)) == ZERO


@given(superfuns(), superfuns())
def test_super_leibniz(F, G):
    for f, p in F.parts():
        sign = -1 if p else 1
        assert etabar(f * G) == etabar(f) * G + sign * (f * etabar(G))
        assert eta(f * G) == eta(f) * G + sign * (f * eta(G))


@given(superfuns(), superfuns())
def test_supercommutative(F, G):
    for f, p in F.parts():
        for g, q in G.parts():
            assert f * g == (-1) ** (p * q) * (g * f)


@given(superfuns(), superfuns(), superfuns())
def test_ring_axioms(F, G, H):
    assert (F * G) * H == F * (G * H)
    assert F * (G + H) == F * G + F * H
    assert F + G == G + F
    assert F - F == ZERO


@given(superfuns())
def test_superfun_text_round_trip(F):
    assert parse_superfun(format_superfun(F)) == F


@given(polys(6))
def test_poly_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(small_rats)
def test_rational_round_trip(q):
    assert parse_rat(format_rat(q)) == q


def test_formatting():
    assert format_poly(Poly([1, Fraction(-3, 2), 1])) == "x^2 - 3/2*x + 1"
    assert format_poly(Poly()) == "0"
    assert format_superfun(X + THETA) == "x + theta*(1)"


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "x", "2/", ""])
def test_parse_rat_rejects(text):
    with pytest.raises(ParseError):
        parse_rat(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_superfun("x^2 + y")
    assert exc.value.token == "y"
    assert exc.value.position == 6
