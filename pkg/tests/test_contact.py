from fractions import Fraction

from hypothesis import given, settings

from conftest import homogeneous_superfuns, superfuns, weights
from ospcohom.contact import (
    OSP_BASIS,
    TABLE,
    ContactField,
    Density,
    check_table,
    contact_bracket,
    decompose_osp,
    field_apply,
    lie_density,
    lie_density_fun,
    osp_bracket,
    osp_element,
    table_mismatches,
)
from ospcohom.superfield import ONE, THETA, X, ZERO, SuperFun, parse_superfun

half = Fraction(1, 2)


def sf(text):
    return parse_superfun(text)


def test_bracket_examples():
    assert contact_bracket(sf("x^2"), THETA) == sf("theta*(-x)")
    assert contact_bracket(sf("theta*(x)"), THETA) == half * X
    assert contact_bracket(X, THETA) == -half * THETA
    assert contact_bracket(ONE, X) == ONE


def test_field_action_examples():
    assert field_apply(ContactField(ONE), sf("x^3")) == sf("3*x^2")
    assert field_apply(ContactField(THETA), X) == half * THETA
    assert field_apply(ContactField(X), THETA) == half * THETA


def test_density_action_examples():
    lam = Fraction(2, 7)
    out = lie_density(ContactField(sf("x^2")), Density(ONE, lam))
    assert out == Density(2 * lam * X, lam)
    assert lie_density_fun(ContactField(THETA), X, lam) == half * THETA
    assert lie_density_fun(ContactField(sf("theta*(x)")), THETA, lam) == half * X


def test_osp_bracket_examples():
    i1, ixt, it = (OSP_BASIS.index(osp_element(n)) for n in ("X_1", "X_xtheta", "X_theta"))
    assert osp_bracket(i1, ixt) == {it: 1}
    assert osp_bracket(2, 4) == {}
    assert osp_bracket(1, 4) == {4: half}


def test_table():
    assert table_mismatches() == []
    assert check_table()
    assert len(TABLE) >= 7


def test_ad_weights_match_grading():
    for g in OSP_BASIS:
        expected = {OSP_BASIS.index(g): g.ad_weight} if g.ad_weight else {}
        assert decompose_osp(contact_bracket(X, g.gen)) == expected


def _sign(p, q):
    return -1 if p * q % 2 else 1


@given(homogeneous_superfuns(), homogeneous_superfuns())
def test_bracket_super_antisymmetric(F, G):
    p, q = F.parity, G.parity
    assert contact_bracket(F, G) == -_sign(p, q) * contact_bracket(G, F)


@settings(max_examples=60)
@given(homogeneous_superfuns(3), homogeneous_superfuns(3), homogeneous_superfuns(3))
def test_bracket_jacobi(F, G, H):
    p, q, r = F.parity, G.parity, H.parity
    total = (
        _sign(p, r) * contact_bracket(F, contact_bracket(G, H))
        + _sign(q, p) * contact_bracket(G, contact_bracket(H, F))
        + _sign(r, q) * contact_bracket(H, contact_bracket(F, G))
    )
    assert total == ZERO


@settings(max_examples=60)
@given(homogeneous_superfuns(3), homogeneous_superfuns(3), superfuns(3), weights)
def test_density_action_is_representation(F, G, h, lam):
    """L_F L_G - (-1)^{pF pG} L_G L_F = L_{F,G}."""
    XF, XG = ContactField(F), ContactField(G)
    s = _sign(F.parity, G.parity)
    lhs = lie_density_fun(XF, lie_density_fun(XG, h, lam), lam) - s * lie_density_fun(
        XG, lie_density_fun(XF, h, lam), lam
    )
    assert lhs == lie_density_fun(XF.bracket(XG), h, lam)


@settings(max_examples=60)
@given(homogeneous_superfuns(3), homogeneous_superfuns(3), superfuns(3))
def test_vector_field_form_agrees(F, G, h):
    from ospcohom.contact import apply_vector_field

    A, B = ContactField(F).as_vector_field()
    assert apply_vector_field(A, B, h) == field_apply(ContactField(F), h)


def test_osp_closed_under_bracket():
    for i, a in enumerate(OSP_BASIS):
        for j, b in enumerate(OSP_BASIS):
            br = contact_bracket(a.gen, b.gen)
            rebuilt = SuperFun()
            for k, c in decompose_osp(br).items():
                rebuilt = rebuilt + c * OSP_BASIS[k].gen
            assert rebuilt == br
            assert osp_bracket(i, j) == decompose_osp(br)
