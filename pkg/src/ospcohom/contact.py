"""Contact vector fields on S^{1|1}, the osp(1|2) basis and density actions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .superfield import (
    THETA,
    ZERO,
    SuperFun,
    ddx,
    dtheta,
    eta,
    etabar,
)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def contact_bracket(F: SuperFun, G: SuperFun) -> SuperFun:
    """``{F,G} = FG' - F'G + 1/2 (-1)^{p(F)+1} etabar(F) etabar(G)``.

    Inhomogeneous arguments are split into parity parts.
    """
    out = ZERO
    for f, pf in F.parts():
        ebf = etabar(f)
        for g, _ in G.parts():
            term = f * ddx(g) - ddx(f) * g
            term = term + (ebf * etabar(g)) * Fraction(_sign(pf + 1), 2)
            out = out + term
    return out


@dataclass(frozen=True)
class ContactField:
    """The contact vector field X_F generated by ``gen``."""

    gen: SuperFun

    @property
    def parity(self) -> Optional[int]:
        # X_{f(x)} is even and X_{theta f(x)} is odd
        return self.gen.parity

    def bracket(self, other: "ContactField") -> "ContactField":
        return ContactField(contact_bracket(self.gen, other.gen))

    def as_vector_field(self) -> Tuple[SuperFun, SuperFun]:
        """Components ``(A, B)`` of ``A d/dx + B d/dtheta``.

        ``X_F = F d/dx + 1/2 eta(F) (d/dtheta - theta d/dx)``.
        """
        h = eta(self.gen) * Fraction(1, 2)
        return self.gen - h * THETA, h


def field_apply(X: ContactField, G: SuperFun) -> SuperFun:
    """Function action ``FG' + 1/2 (-1)^{(p(F)+1)p(G)} etabar(F) etabar(G)``."""
    out = ZERO
    for f, pf in X.gen.parts():
        ebf = etabar(f)
        for g, pg in G.parts():
            out = out + f * ddx(g) + (ebf * etabar(g)) * Fraction(_sign((pf + 1) * pg), 2)
    return out


def apply_vector_field(A: SuperFun, B: SuperFun, G: SuperFun) -> SuperFun:
    """``(A d/dx + B d/dtheta)(G)`` with coefficients on the left."""
    return A * ddx(G) + B * dtheta(G)


@dataclass(frozen=True)
class Density:
    """``coeff * alpha^weight``."""

    coeff: SuperFun
    weight: Fraction

    def __add__(self, other: "Density") -> "Density":
        if self.weight != other.weight:
            raise ValueError("cannot add densities of different weights")
        return Density(self.coeff + other.coeff, self.weight)

    def __sub__(self, other: "Density") -> "Density":
        if self.weight != other.weight:
            raise ValueError("cannot subtract densities of different weights")
        return Density(self.coeff - other.coeff, self.weight)


def lie_density_fun(X: ContactField, G: SuperFun, lam: Fraction) -> SuperFun:
    return field_apply(X, G) + ddx(X.gen) * G * lam


def lie_density(X: ContactField, d: Density) -> Density:
    """``L^lam_{X_F}(G) = L_{X_F}(G) + lam F' G`` on ``d = G alpha^lam``."""
    return Density(lie_density_fun(X, d.coeff, d.weight), d.weight)


# -- osp(1|2) --------------------------------------------------------------


@dataclass(frozen=True)
class OspElem:
    tag: str
    name: str
    gen: SuperFun
    parity: int
    ad_weight: Fraction

    @property
    def field(self) -> ContactField:
        return ContactField(self.gen)

    def __str__(self) -> str:
        return self.name


OSP_BASIS: Tuple[OspElem, ...] = (
    OspElem("X1", "X_1", SuperFun.monomial(0), 0, Fraction(-1)),
    OspElem("Xx", "X_x", SuperFun.monomial(1), 0, Fraction(0)),
    OspElem("Xx2", "X_x2", SuperFun.monomial(2), 0, Fraction(1)),
    OspElem("Xtheta", "X_theta", SuperFun.monomial(0, 1), 1, Fraction(-1, 2)),
    OspElem("Xxtheta", "X_xtheta", SuperFun.monomial(1, 1), 1, Fraction(1, 2)),
)

OSP_INDEX: Dict[str, int] = {}
for _i, _g in enumerate(OSP_BASIS):
    OSP_INDEX[_g.tag] = _i
    OSP_INDEX[_g.name] = _i

SL2_INDICES = (0, 1, 2)
ODD_INDICES = (3, 4)


def osp_basis() -> List[OspElem]:
    return list(OSP_BASIS)


def osp_element(key: str) -> OspElem:
    return OSP_BASIS[OSP_INDEX[key]]


def decompose_osp(F: SuperFun) -> Dict[int, Fraction]:
    """Coordinates of a generator in the basis ``1, x, x^2, theta, x theta``.

    Raises ValueError if ``F`` is not in the span.
    """
    if F.ev.degree > 2 or F.od.degree > 1:
        raise ValueError(f"{F} does not generate an element of osp(1|2)")
    coords = {0: F.ev[0], 1: F.ev[1], 2: F.ev[2], 3: F.od[0], 4: F.od[1]}
    return {i: c for i, c in coords.items() if c}


def osp_bracket(i: int, j: int) -> Dict[int, Fraction]:
    """Structure constants ``[g_i, g_j] = sum_k c_k g_k``."""
    return _BRACKETS[i, j]


_BRACKETS = {
    (i, j): decompose_osp(contact_bracket(OSP_BASIS[i].gen, OSP_BASIS[j].gen))
    for i in range(5)
    for j in range(5)
}

half = Fraction(1, 2)

#: relations displayed for osp(1|2), plus the sl(2) ones
TABLE: Tuple[Tuple[str, str, Dict[str, Fraction]], ...] = (
    ("X_x2", "X_theta", {"X_xtheta": Fraction(-1)}),
    ("X_x", "X_theta", {"X_theta": -half}),
    ("X_1", "X_theta", {}),
    ("X_x2", "X_xtheta", {}),
    ("X_x", "X_xtheta", {"X_xtheta": half}),
    ("X_1", "X_xtheta", {"X_theta": Fraction(1)}),
    ("X_xtheta", "X_theta", {"X_x": half}),
    ("X_1", "X_x", {"X_1": Fraction(1)}),
    ("X_1", "X_x2", {"X_x": Fraction(2)}),
    ("X_x", "X_x2", {"X_x2": Fraction(1)}),
)


def table_mismatches() -> List[str]:
    """Relations of the commutation table that the contact bracket fails."""
    bad = []
    for a, b, expected in TABLE:
        got = osp_bracket(OSP_INDEX[a], OSP_INDEX[b])
        want = {OSP_INDEX[k]: v for k, v in expected.items()}
        if got != want:
            bad.append(f"[{a},{b}]: expected {want}, got {got}")
    x_index = OSP_INDEX["X_x"]
    for i, g in enumerate(OSP_BASIS):
        got = osp_bracket(x_index, i)
        want = {i: g.ad_weight} if g.ad_weight else {}
        if got != want:
            bad.append(f"ad X_x on {g.name}: expected weight {g.ad_weight}, got {got}")
    return bad


def check_table() -> bool:
    return not table_mismatches()
