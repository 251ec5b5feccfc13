"""Differential operators between weighted densities on S^{1|1}.

Operators are stored in etabar-normal form ``sum_j c_j(x, theta) etabar^j``
with coefficients on the left.  Since ``etabar^2 = -d/dx`` this covers every
differential operator ``sum a_i d_x^i + sum b_i d_x^i d_theta``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from .contact import ContactField, Density, OspElem
from .superfield import (
    THETA,
    ZERO,
    Poly,
    SuperFun,
    ddx,
    eta,
    etabar,
    parse_superfun_stream,
)
from .syntax import ParseError, TokenStream

Key = Tuple[int, int, int]  # (a, e, j) for x^a theta^e etabar^j


class WeightMismatch(ValueError):
    pass


def _clean(terms: Mapping[int, SuperFun]) -> Dict[int, SuperFun]:
    return {j: c for j, c in sorted(terms.items()) if c}


class DOp:
    """``sum_j c_j etabar^j`` viewed as a map from F_src to F_dst."""

    __slots__ = ("src", "dst", "terms", "_hash")

    def __init__(self, src, dst, terms: Optional[Mapping[int, SuperFun]] = None):
        self.src = Fraction(src)
        self.dst = Fraction(dst)
        self.terms = _clean(terms or {})
        self._hash = None

    @classmethod
    def identity(cls, src, dst=None) -> "DOp":
        return cls(src, src if dst is None else dst, {0: SuperFun.const(1)})

    @classmethod
    def mult(cls, c: SuperFun, src, dst=None) -> "DOp":
        return cls(src, src if dst is None else dst, {0: c})

    @classmethod
    def etabar_power(cls, j: int, src, dst=None, c: Optional[SuperFun] = None) -> "DOp":
        return cls(src, src if dst is None else dst, {j: c if c is not None else SuperFun.const(1)})

    @classmethod
    def dx_power(cls, k: int, src, dst=None) -> "DOp":
        """``d_x^k = (-1)^k etabar^{2k}``."""
        return cls(src, src if dst is None else dst, {2 * k: SuperFun.const(-1 if k % 2 else 1)})

    @classmethod
    def monomial(cls, key: Key, src, dst) -> "DOp":
        a, e, j = key
        return cls(src, dst, {j: SuperFun.monomial(a, e)})

    # -- structure -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DOp):
            return NotImplemented
        return (self.src, self.dst, self.terms) == (other.src, other.dst, other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.src, self.dst, tuple(self.terms.items())))
        return self._hash

    @property
    def order(self) -> int:
        return max(self.terms) if self.terms else -1

    @property
    def parity(self) -> Optional[int]:
        """Common parity of all terms, or None if inhomogeneous. Zero is even."""
        ps = set()
        for j, c in self.terms.items():
            for _, pc in c.parts():
                ps.add((pc + j) % 2)
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parts(self) -> Iterator[Tuple["DOp", int]]:
        """Nonzero parity-homogeneous components."""
        split: Dict[int, Dict[int, SuperFun]] = {0: {}, 1: {}}
        for j, c in self.terms.items():
            for part, pc in c.parts():
                split[(pc + j) % 2][j] = part
        for p in (0, 1):
            if split[p]:
                yield DOp(self.src, self.dst, split[p]), p

    def with_weights(self, src, dst) -> "DOp":
        return DOp(src, dst, self.terms)

    def _check_same(self, other: "DOp"):
        if (self.src, self.dst) != (other.src, other.dst):
            raise WeightMismatch(
                f"operators act between different weights: "
                f"({self.src},{self.dst}) vs ({other.src},{other.dst})"
            )

    def __add__(self, other: "DOp") -> "DOp":
        self._check_same(other)
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = out[j] + c if j in out else c
        return DOp(self.src, self.dst, out)

    def __neg__(self) -> "DOp":
        return DOp(self.src, self.dst, {j: -c for j, c in self.terms.items()})

    def __sub__(self, other: "DOp") -> "DOp":
        return self + (-other)

    def __mul__(self, s) -> "DOp":
        s = Fraction(s)
        return DOp(self.src, self.dst, {j: c * s for j, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "DOp") -> "DOp":
        return op_compose(self, other)

    def monomials(self) -> Dict[Key, Fraction]:
        """Coordinates in the monomial basis ``x^a theta^e etabar^j``."""
        out: Dict[Key, Fraction] = {}
        for j, c in self.terms.items():
            for a, v in enumerate(c.ev.coeffs):
                if v:
                    out[a, 0, j] = v
            for a, v in enumerate(c.od.coeffs):
                if v:
                    out[a, 1, j] = v
        return out

    @classmethod
    def from_monomials(cls, coords: Mapping[Key, Fraction], src, dst) -> "DOp":
        ev: Dict[int, Dict[int, Fraction]] = {}
        od: Dict[int, Dict[int, Fraction]] = {}
        for (a, e, j), v in coords.items():
            d = od if e else ev
            d.setdefault(j, {})[a] = d.setdefault(j, {}).get(a, 0) + v
        terms = {}
        for j in set(ev) | set(od):
            def poly(d):
                if j not in d:
                    return Poly()
                m = max(d[j])
                return Poly([d[j].get(a, 0) for a in range(m + 1)])

            terms[j] = SuperFun(poly(ev), poly(od))
        return cls(src, dst, terms)

    def __repr__(self) -> str:
        return f"DOp({self.src}, {self.dst}, {format_dop(self)!r})"

    def __str__(self) -> str:
        return format_dop(self)


# -- application and composition -------------------------------------------


def op_apply(A: DOp, d: Density) -> Density:
    if d.weight != A.src:
        raise WeightMismatch(f"operator expects weight {A.src}, got density of weight {d.weight}")
    return Density(apply_fun(A, d.coeff), A.dst)


def apply_fun(A: DOp, G: SuperFun) -> SuperFun:
    out = ZERO
    cur = G
    last = 0
    for j, c in A.terms.items():
        for _ in range(j - last):
            cur = etabar(cur)
        last = j
        out = out + c * cur
    return out


@lru_cache(maxsize=200_000)
def _etabar_pow_times(i: int, c: SuperFun) -> Tuple[Tuple[int, SuperFun], ...]:
    """Normal form of ``etabar^i o (c .)``."""
    if i == 0:
        return ((0, c),)
    prev = _etabar_pow_times(i - 1, c)
    out: Dict[int, SuperFun] = {}
    # etabar o (d .) = etabar(d) . + (-1)^{p(d)} d . etabar
    for k, d in prev:
        t = etabar(d)
        if t:
            out[k] = out[k] + t if k in out else t
        s = d.involution()
        out[k + 1] = out[k + 1] + s if k + 1 in out else s
    return tuple((k, v) for k, v in sorted(out.items()) if v)


def op_compose(A: DOp, B: DOp) -> DOp:
    """Normal form of ``A o B``; requires ``B.dst == A.src``."""
    if B.dst != A.src:
        raise WeightMismatch(f"cannot compose: inner target {B.dst} != outer source {A.src}")
    out: Dict[int, SuperFun] = {}
    for i, a in A.terms.items():
        for j, b in B.terms.items():
            for k, d in _etabar_pow_times(i, b):
                v = a * d
                if v:
                    n = k + j
                    out[n] = out[n] + v if n in out else v
    return DOp(B.src, A.dst, out)


# -- the module action -----------------------------------------------------


def density_action_op(F: SuperFun, lam) -> DOp:
    """``L^lam_{X_F} = F d_x + 1/2 eta(F) etabar + lam F'`` as an operator."""
    return DOp(
        lam,
        lam,
        {2: -F, 1: eta(F) * Fraction(1, 2), 0: ddx(F) * Fraction(lam)},
    )


def _field_gen(X) -> SuperFun:
    if isinstance(X, OspElem):
        return X.gen
    if isinstance(X, ContactField):
        return X.gen
    return X


def lie_op(X, A: DOp) -> DOp:
    """``L^{lam,mu}_{X_F}(A) = L^mu_{X_F} o A - (-1)^{p(A)p(F)} A o L^lam_{X_F}``."""
    F = _field_gen(X)
    out = DOp(A.src, A.dst)
    for f, pf in F.parts():
        left = density_action_op(f, A.dst)
        right = density_action_op(f, A.src)
        for a, pa in A.parts():
            term = op_compose(left, a)
            back = op_compose(a, right)
            out = out + (term + back if pa * pf else term - back)
    return out


# -- weight grading --------------------------------------------------------


def monomial_weight(key: Key, lam, mu) -> Fraction:
    """Eigenvalue of ``L^{lam,mu}_{X_x}`` on ``x^a theta^e etabar^j``."""
    a, e, j = key
    return a + Fraction(e - j, 2) + (Fraction(mu) - Fraction(lam))


def op_weight(A: DOp) -> Optional[Fraction]:
    """Common weight of all monomials of ``A`` (None if not homogeneous)."""
    ws = {monomial_weight(k, A.src, A.dst) for k in A.monomials()}
    if len(ws) == 1:
        return ws.pop()
    return None


class OpBasisIndex(NamedTuple):
    weight: Fraction
    max_order: int
    keys: Tuple[Key, ...]
    elements: Tuple[DOp, ...]


def weight_keys(lam, mu, w, N: int, parity: Optional[int] = None) -> List[Key]:
    """Monomial keys of weight ``w`` and order at most ``N``, sorted by (j, a, e)."""
    shift = Fraction(w) - (Fraction(mu) - Fraction(lam))
    out = []
    for j in range(N + 1):
        for e in (0, 1):
            if parity is not None and (e + j) % 2 != parity:
                continue
            a = shift - Fraction(e - j, 2)
            if a.denominator == 1 and a >= 0:
                out.append((int(a), e, j))
    out.sort(key=lambda k: (k[2], k[0], k[1]))
    return out


def enumerate_basis(lam, mu, w, N: int, parity: Optional[int] = None) -> OpBasisIndex:
    if N < 0:
        raise ValueError("order cap must be non-negative")
    keys = weight_keys(lam, mu, w, N, parity)
    return OpBasisIndex(
        Fraction(w), N, tuple(keys), tuple(DOp.monomial(k, lam, mu) for k in keys)
    )


# -- d_x / d_theta form ----------------------------------------------------

DKey = Tuple[int, int]  # (i, t): coefficient of d_x^i (t=0) or d_x^i d_theta (t=1)


def to_dform(A: DOp) -> Dict[DKey, SuperFun]:
    out: Dict[DKey, SuperFun] = {}

    def add(k, v):
        if v:
            out[k] = out[k] + v if k in out else v

    for j, c in A.terms.items():
        m, r = divmod(j, 2)
        s = -1 if m % 2 else 1
        if r == 0:
            add((m, 0), c * s)
        else:
            # etabar^{2m+1} = (-1)^m (d_x^m d_theta - theta d_x^{m+1})
            add((m, 1), c * s)
            add((m + 1, 0), (c * THETA) * (-s))
    return {k: v for k, v in sorted(out.items()) if v}


def from_dform(terms: Mapping[DKey, SuperFun], src, dst) -> DOp:
    out: Dict[int, SuperFun] = {}

    def add(j, v):
        if v:
            out[j] = out[j] + v if j in out else v

    for (i, t), c in terms.items():
        s = -1 if i % 2 else 1
        if t == 0:
            add(2 * i, c * s)
        else:
            # d_x^i d_theta = (-1)^i etabar^{2i+1} + (-1)^{i+1} theta etabar^{2i+2}
            add(2 * i + 1, c * s)
            add(2 * i + 2, (c * THETA) * (-s))
    return DOp(src, dst, out)


# -- block form over the classical components ------------------------------

Blocks = Dict[Tuple[int, int], Dict[int, Poly]]


def to_blocks(A: DOp) -> Blocks:
    """Split ``A`` acting on ``g0 + theta g1`` into four classical operators.

    Block ``(r, s)`` sends the ``s`` component of the input to the ``r``
    component of the output; each block is ``{i: coefficient of d_x^i}``.
    """
    blocks: Blocks = {(0, 0): {}, (0, 1): {}, (1, 0): {}, (1, 1): {}}

    def add(b, i, p):
        if p:
            d = blocks[b]
            d[i] = d[i] + p if i in d else p

    for (i, t), c in to_dform(A).items():
        if t == 0:
            add((0, 0), i, c.ev)
            add((1, 0), i, c.od)
            add((1, 1), i, c.ev)
        else:
            add((0, 1), i, c.ev)
            add((1, 1), i, c.od)
    return {b: {i: p for i, p in sorted(d.items()) if p} for b, d in blocks.items()}


def from_blocks(blocks: Blocks, src, dst) -> DOp:
    terms: Dict[DKey, SuperFun] = {}

    def add(k, v):
        if v:
            terms[k] = terms[k] + v if k in terms else v

    for (r, s), d in blocks.items():
        for i, p in d.items():
            if (r, s) == (0, 0):
                add((i, 0), SuperFun(p))
                add((i, 1), SuperFun(od=-p))
            elif (r, s) == (1, 1):
                add((i, 1), SuperFun(od=p))
            elif (r, s) == (0, 1):
                add((i, 1), SuperFun(p))
            else:
                add((i, 0), SuperFun(od=p))
    return from_dform(terms, src, dst)


# -- text format -----------------------------------------------------------


def format_dop(A: DOp) -> str:
    if not A:
        return "0"
    return " + ".join(f"({c})*etabar^{j}" for j, c in sorted(A.terms.items(), reverse=True))


def format_dform(A: DOp) -> str:
    terms = to_dform(A)
    if not terms:
        return "0"
    parts = []
    for (i, t), c in sorted(terms.items(), reverse=True):
        parts.append(f"({c})*dx^{i}" + ("*dtheta" if t else ""))
    return " + ".join(parts)


def _parse_sum(text: str, handler) -> None:
    ts = TokenStream(text)
    if ts.peek().kind == "int" and ts.peek().text == "0" and ts.peek(1).kind == "end":
        return
    while True:
        ts.expect("(")
        c = parse_superfun_stream(ts)
        ts.expect(")")
        ts.expect("*")
        handler(ts, c)
        if ts.at_end():
            return
        ts.expect("+")


def parse_dop(text: str, src, dst) -> DOp:
    """Inverse of :func:`format_dop`."""
    out: Dict[int, SuperFun] = {}

    def handler(ts, c):
        ts.expect("etabar")
        ts.expect("^")
        j = ts.expect_int()
        out[j] = out[j] + c if j in out else c

    _parse_sum(text, handler)
    return DOp(src, dst, out)


def parse_dform(text: str, src, dst) -> DOp:
    """Inverse of :func:`format_dform`."""
    out: Dict[DKey, SuperFun] = {}

    def handler(ts, c):
        ts.expect("dx")
        ts.expect("^")
        i = ts.expect_int()
        t = 0
        if ts.peek().text == "*" and ts.peek(1).text == "dtheta":
            ts.next()
            ts.next()
            t = 1
        out[i, t] = out[i, t] + c if (i, t) in out else c

    _parse_sum(text, handler)
    return from_dform(out, src, dst)


__all__ = [
    "DOp",
    "Density",
    "OpBasisIndex",
    "ParseError",
    "WeightMismatch",
    "apply_fun",
    "density_action_op",
    "enumerate_basis",
    "format_dform",
    "format_dop",
    "from_blocks",
    "from_dform",
    "lie_op",
    "monomial_weight",
    "op_apply",
    "op_compose",
    "op_weight",
    "parse_dform",
    "parse_dop",
    "to_blocks",
    "to_dform",
    "weight_keys",
]
