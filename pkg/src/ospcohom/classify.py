"""sl(2)-invariant bilinear differential maps ``h x F_lam -> F_mu``.

``h`` is the span of ``dx^{-1/2}`` and ``x dx^{-1/2}``.  A candidate map is
``sum beta_{r,s} h^{(r)} f^{(s)}`` with constant coefficients; the solver
imposes equivariance under ``d/dx, x d/dx, x^2 d/dx`` on monomial inputs and
returns a basis of the solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .linalg import kernel
from .superfield import Poly
from .syntax import format_rat

H_WEIGHT = Fraction(-1, 2)


def _lie(g: Poly, f: Poly, lam) -> Poly:
    """``L^lam_{g d/dx} f = g f' + lam g' f``."""
    return g * f.deriv() + g.deriv() * f * Fraction(lam)


@dataclass(frozen=True)
class BilinearOp:
    lam: Fraction
    mu: Fraction
    coeffs: Tuple[Tuple[Tuple[int, int], Fraction], ...]

    @classmethod
    def make(cls, lam, mu, coeffs: Mapping[Tuple[int, int], Fraction]) -> "BilinearOp":
        items = tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v))
        return cls(Fraction(lam), Fraction(mu), items)

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.coeffs)

    def __call__(self, h: Poly, f: Poly) -> Poly:
        out = Poly()
        for (r, s), b in self.coeffs:
            out = out + h.deriv(r) * f.deriv(s) * b
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_invariant(self, f_degree: int) -> bool:
        for g in SL2:
            for h in H_BASIS:
                for q in range(f_degree + 1):
                    if invariance_defect(self, g, h, Poly.monomial(q)):
                        return False
        return True

    def proportional_to(self, other: "BilinearOp") -> bool:
        a, b = self.as_dict(), other.as_dict()
        if set(a) != set(b):
            return False
        if not a:
            return True
        k0 = next(iter(a))
        ratio = a[k0] / b[k0]
        return all(a[k] == ratio * b[k] for k in a)

    def __str__(self) -> str:
        return format_bilinear(self)


def _deriv_name(base: str, n: int) -> str:
    if n <= 3:
        return base + "'" * n
    return f"{base}^({n})"


def format_bilinear(A: BilinearOp) -> str:
    if not A.coeffs:
        return "0"
    parts = []
    for (r, s), b in sorted(A.coeffs, key=lambda t: (t[0][0], -t[0][1])):
        mono = f"{_deriv_name('h', r)} {_deriv_name('f', s)}"
        sign = "-" if b < 0 else "+"
        mag = -b if b < 0 else b
        body = mono if mag == 1 else f"{format_rat(mag)} {mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


SL2 = (Poly.monomial(0), Poly.monomial(1), Poly.monomial(2))
H_BASIS = (Poly.monomial(0), Poly.monomial(1))


def invariance_defect(A: BilinearOp, g: Poly, h: Poly, f: Poly) -> Poly:
    """``L^mu_g A(h,f) - A(L^{-1/2}_g h, f) - A(h, L^lam_g f)``."""
    return _lie(g, A(h, f), A.mu) - A(_lie(g, h, H_WEIGHT), f) - A(h, _lie(g, f, A.lam))


def natural_k(lam, mu) -> Optional[int]:
    """``mu - lam + 1/2`` when it is a natural number (0 included)."""
    k = Fraction(mu) - Fraction(lam) + Fraction(1, 2)
    if k.denominator == 1 and k >= 0:
        return int(k)
    return None


def invariant_bilinear(lam, mu, cap: Optional[int] = None) -> List[BilinearOp]:
    """Basis of the sl(2)-invariant maps with derivative order in f at most ``cap``."""
    lam, mu = Fraction(lam), Fraction(mu)
    if cap is None:
        k = natural_k(lam, mu)
        cap = (k if k is not None else 0) + 2
    unknowns = [(r, s) for r in (0, 1) for s in range(cap + 1)]
    columns = []
    for key in unknowns:
        A = BilinearOp.make(lam, mu, {key: 1})
        col: Dict = {}
        for gi, g in enumerate(SL2):
            for hi, h in enumerate(H_BASIS):
                for q in range(cap + 3):
                    d = invariance_defect(A, g, h, Poly.monomial(q))
                    for deg, v in enumerate(d.coeffs):
                        if v:
                            col[gi, hi, q, deg] = v
        columns.append(col)
    out = []
    for vec in kernel(columns):
        coeffs = {unknowns[i]: v for i, v in vec.items()}
        out.append(_normalize(BilinearOp.make(lam, mu, coeffs)))
    return out


def _normalize(A: BilinearOp) -> BilinearOp:
    d = A.as_dict()
    lead = max((k for k in d if k[0] == 0), key=lambda k: k[1], default=None)
    if lead is None:
        lead = min(d)
    scale = 1 / d[lead]
    return BilinearOp.make(A.lam, A.mu, {k: v * scale for k, v in d.items()})


def closed_form(lam, k: int) -> BilinearOp:
    """``h f^{(k)} + k(2 lam + k - 1) h' f^{(k-1)}``."""
    lam = Fraction(lam)
    mu = lam - Fraction(1, 2) + k
    coeffs = {(0, k): Fraction(1)}
    if k >= 1:
        coeffs[1, k - 1] = k * (2 * lam + k - 1)
    return BilinearOp.make(lam, mu, coeffs)


def constraint_product(lam, k: int) -> Fraction:
    """``k(k-1)(2 lam + k - 1)(2 lam + k - 2)``; a_k must vanish unless this does."""
    lam = Fraction(lam)
    return k * (k - 1) * (2 * lam + k - 1) * (2 * lam + k - 2)


def predicted_dim(lam, mu) -> int:
    k = natural_k(lam, mu)
    if k is None:
        return 0
    return 1 if constraint_product(lam, k) == 0 else 0


def invariants_report(lam, mu, cap: Optional[int] = None) -> Dict[str, object]:
    basis = invariant_bilinear(lam, mu, cap)
    k = natural_k(lam, mu)
    return {
        "lambda": format_rat(Fraction(lam)),
        "mu": format_rat(Fraction(mu)),
        "k": k,
        "dim": len(basis),
        "basis": [str(b) for b in basis],
    }
