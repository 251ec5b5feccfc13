"""Classical differential operators ``sum a_i(x) d_x^i`` between densities on S^1.

Used for the sl(2) comparison: the even part of osp(1|2) acting on the
classical components of the super operator modules.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Mapping, Optional, Tuple

from .superfield import Poly

CKey = Tuple[int, int]  # (a, i) for x^a d_x^i


class ClassicalOp:
    __slots__ = ("src", "dst", "terms")

    def __init__(self, src, dst, terms: Optional[Mapping[int, Poly]] = None):
        self.src = Fraction(src)
        self.dst = Fraction(dst)
        self.terms = {i: p for i, p in sorted((terms or {}).items()) if p}

    @classmethod
    def monomial(cls, key: CKey, src, dst) -> "ClassicalOp":
        a, i = key
        return cls(src, dst, {i: Poly.monomial(a)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassicalOp):
            return NotImplemented
        return (self.src, self.dst, self.terms) == (other.src, other.dst, other.terms)

    def __hash__(self):
        return hash((self.src, self.dst, tuple(self.terms.items())))

    @property
    def order(self) -> int:
        return max(self.terms) if self.terms else -1

    @property
    def parity(self) -> int:
        return 0

    def __add__(self, other: "ClassicalOp") -> "ClassicalOp":
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("classical operators act between different weights")
        out = dict(self.terms)
        for i, p in other.terms.items():
            out[i] = out[i] + p if i in out else p
        return ClassicalOp(self.src, self.dst, out)

    def __neg__(self) -> "ClassicalOp":
        return ClassicalOp(self.src, self.dst, {i: -p for i, p in self.terms.items()})

    def __sub__(self, other: "ClassicalOp") -> "ClassicalOp":
        return self + (-other)

    def __mul__(self, s) -> "ClassicalOp":
        s = Fraction(s)
        return ClassicalOp(self.src, self.dst, {i: p * s for i, p in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "ClassicalOp") -> "ClassicalOp":
        return compose(self, other)

    def __call__(self, f: Poly) -> Poly:
        out = Poly()
        for i, p in self.terms.items():
            out = out + p * f.deriv(i)
        return out

    def monomials(self) -> Dict[CKey, Fraction]:
        out = {}
        for i, p in self.terms.items():
            for a, v in enumerate(p.coeffs):
                if v:
                    out[a, i] = v
        return out

    @classmethod
    def from_monomials(cls, coords: Mapping[CKey, Fraction], src, dst) -> "ClassicalOp":
        by_i: Dict[int, Dict[int, Fraction]] = {}
        for (a, i), v in coords.items():
            by_i.setdefault(i, {})[a] = v
        terms = {
            i: Poly([d.get(a, 0) for a in range(max(d) + 1)]) for i, d in by_i.items()
        }
        return cls(src, dst, terms)

    def __repr__(self) -> str:
        return f"ClassicalOp({self.src}, {self.dst}, {format_classical(self)!r})"

    def __str__(self) -> str:
        return format_classical(self)


def format_classical(A: ClassicalOp) -> str:
    if not A:
        return "0"
    return " + ".join(f"({p})*dx^{i}" for i, p in sorted(A.terms.items(), reverse=True))


def compose(A: ClassicalOp, B: ClassicalOp) -> ClassicalOp:
    if B.dst != A.src:
        raise ValueError(f"cannot compose: inner target {B.dst} != outer source {A.src}")
    out: Dict[int, Poly] = {}
    for i, a in A.terms.items():
        for j, b in B.terms.items():
            # d^i o b = sum_r C(i,r) b^{(r)} d^{i-r}
            for r in range(i + 1):
                db = b.deriv(r)
                if not db:
                    break
                n = i - r + j
                v = a * db * comb(i, r)
                out[n] = out[n] + v if n in out else v
    return ClassicalOp(B.src, A.dst, out)


def lie_derivative_op(F: Poly, lam) -> ClassicalOp:
    """``L^lam_{F d/dx} = F d_x + lam F'``."""
    return ClassicalOp(lam, lam, {1: F, 0: F.deriv() * Fraction(lam)})


def lie_classical(F: Poly, A: ClassicalOp) -> ClassicalOp:
    """``L^{lam,mu}_{F d/dx}(A) = L^mu o A - A o L^lam``."""
    return compose(lie_derivative_op(F, A.dst), A) - compose(A, lie_derivative_op(F, A.src))


def classical_weight(key: CKey, lam, mu) -> Fraction:
    a, i = key
    return a - i + (Fraction(mu) - Fraction(lam))


SL2_GENERATORS = (
    ("X_1", Poly.monomial(0), Fraction(-1)),
    ("X_x", Poly.monomial(1), Fraction(0)),
    ("X_x2", Poly.monomial(2), Fraction(1)),
)
