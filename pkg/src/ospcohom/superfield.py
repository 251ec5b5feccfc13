"""Polynomial functions on the supercircle.

A function on S^{1|1} is ``f0(x) + theta*f1(x)`` with ``theta**2 == 0``.
Coefficients are restricted to polynomials in ``x`` over the rationals;
every value here is immutable and kept in canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .syntax import ParseError, TokenStream, format_rat

Scalar = Union[int, Fraction]

#: degree of the zero polynomial
NEG_INF = float("-inf")


def _trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    # most inputs are already Fractions; only convert the rest
    return tuple(c if type(c) is Fraction else Fraction(c) for c in coeffs[:n])


class Poly:
    """Univariate polynomial in x, coefficients in ascending degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _trim(list(coeffs))
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO_POLY
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def deriv(self, times: int = 1) -> "Poly":
        coeffs = self.coeffs
        for _ in range(times):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return Poly(coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO_POLY = Poly()
ONE_POLY = Poly.const(1)


class SuperFun:
    """``ev(x) + theta*od(x)``; the odd variable squares to zero."""

    __slots__ = ("ev", "od", "_hash")

    def __init__(self, ev: Optional[Poly] = None, od: Optional[Poly] = None):
        self.ev = ev if ev is not None else ZERO_POLY
        self.od = od if od is not None else ZERO_POLY
        self._hash = None

    @classmethod
    def even(cls, coeffs: Iterable[Scalar]) -> "SuperFun":
        return cls(Poly(coeffs), ZERO_POLY)

    @classmethod
    def odd(cls, coeffs: Iterable[Scalar]) -> "SuperFun":
        return cls(ZERO_POLY, Poly(coeffs))

    @classmethod
    def const(cls, c: Scalar) -> "SuperFun":
        return cls(Poly.const(c), ZERO_POLY)

    @classmethod
    def monomial(cls, a: int, e: int = 0, c: Scalar = 1) -> "SuperFun":
        """``c * x**a * theta**e``."""
        p = Poly.monomial(a, c)
        return cls(ZERO_POLY, p) if e else cls(p, ZERO_POLY)

    def __bool__(self) -> bool:
        return bool(self.ev) or bool(self.od)

    def __eq__(self, other) -> bool:
        if isinstance(other, SuperFun):
            return self.ev == other.ev and self.od == other.od
        if isinstance(other, (int, Fraction)):
            return self == SuperFun.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("SuperFun", self.ev.coeffs, self.od.coeffs))
        return self._hash

    @property
    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous functions (zero counts as even), else None."""
        if not self.od:
            return 0
        if not self.ev:
            return 1
        return None

    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def parts(self) -> Iterator[Tuple["SuperFun", int]]:
        """Nonzero homogeneous components with their parities."""
        if self.ev:
            yield SuperFun(self.ev, ZERO_POLY), 0
        if self.od:
            yield SuperFun(ZERO_POLY, self.od), 1

    def __add__(self, other: "SuperFun") -> "SuperFun":
        return SuperFun(self.ev + other.ev, self.od + other.od)

    def __neg__(self) -> "SuperFun":
        return SuperFun(-self.ev, -self.od)

    def __sub__(self, other: "SuperFun") -> "SuperFun":
        return SuperFun(self.ev - other.ev, self.od - other.od)

    def __mul__(self, other) -> "SuperFun":
        if isinstance(other, (int, Fraction)):
            return SuperFun(self.ev * other, self.od * other)
        if isinstance(other, Poly):
            return SuperFun(self.ev * other, self.od * other)
        # (f0 + t f1)(g0 + t g1) = f0 g0 + t (f0 g1 + f1 g0)
        return SuperFun(self.ev * other.ev, self.ev * other.od + self.od * other.ev)

    def __rmul__(self, other) -> "SuperFun":
        if isinstance(other, (int, Fraction, Poly)):
            return self * other
        return NotImplemented

    def involution(self) -> "SuperFun":
        """``(-1)^{p(F)} F`` extended linearly: ``f0 - theta*f1``."""
        return SuperFun(self.ev, -self.od)

    def mul_theta(self) -> "SuperFun":
        """``theta * F``."""
        return SuperFun(ZERO_POLY, self.ev)

    def __repr__(self) -> str:
        return f"SuperFun({format_superfun(self)!r})"

    def __str__(self) -> str:
        return format_superfun(self)


ZERO = SuperFun()
ONE = SuperFun.const(1)
X = SuperFun.even((0, 1))
THETA = SuperFun.odd((1,))


def sf_add(a: SuperFun, b: SuperFun) -> SuperFun:
    return a + b


def sf_mul(a: SuperFun, b: SuperFun) -> SuperFun:
    return a * b


def ddx(a: SuperFun) -> SuperFun:
    return SuperFun(a.ev.deriv(), a.od.deriv())


def dtheta(a: SuperFun) -> SuperFun:
    return SuperFun(a.od, ZERO_POLY)


def eta(a: SuperFun) -> SuperFun:
    """``(d/dtheta + theta d/dx) F = f1 + theta*f0'``."""
    return SuperFun(a.od, a.ev.deriv())


def etabar(a: SuperFun) -> SuperFun:
    """``(d/dtheta - theta d/dx) F = f1 - theta*f0'``."""
    return SuperFun(a.od, -a.ev.deriv())


def etabar_pow(a: SuperFun, j: int) -> SuperFun:
    for _ in range(j):
        a = etabar(a)
    return a


def eta_pow(a: SuperFun, j: int) -> SuperFun:
    for _ in range(j):
        a = eta(a)
    return a


def canonicalize(a: SuperFun) -> SuperFun:
    return SuperFun(Poly(a.ev.coeffs), Poly(a.od.coeffs))


# -- text format -----------------------------------------------------------


def _format_term(c: Fraction, k: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    mag = -c if c < 0 else c
    if k == 0:
        body = format_rat(mag)
    else:
        mono = "x" if k == 1 else f"x^{k}"
        body = mono if mag == 1 else f"{format_rat(mag)}*{mono}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c:
            out.append(_format_term(c, k, not out))
    return "".join(out)


def format_superfun(a: SuperFun) -> str:
    if not a:
        return "0"
    if not a.od:
        return format_poly(a.ev)
    odd = f"theta*({format_poly(a.od)})"
    if not a.ev:
        return odd
    return f"{format_poly(a.ev)} + {odd}"


def _parse_poly_term(ts: TokenStream) -> Poly:
    coef: Fraction = Fraction(1)
    have_coef = False
    tok = ts.peek()
    if tok.kind == "int":
        num = ts.expect_int()
        if ts.accept("/"):
            den = ts.expect_int()
            if den == 0:
                raise ParseError("zero denominator", "0", ts.tokens[ts.i - 1].pos)
            coef = Fraction(num, den)
        else:
            coef = Fraction(num)
        have_coef = True
        if ts.peek().text == "*" and ts.peek(1).text == "x":
            ts.next()
        elif ts.peek().text != "x":
            return Poly.const(coef)
    if ts.peek().text == "x":
        ts.next()
        k = 1
        if ts.accept("^"):
            k = ts.expect_int()
        return Poly.monomial(k, coef)
    if not have_coef:
        ts.fail("expected a polynomial term")
    return Poly.const(coef)


def parse_poly_stream(ts: TokenStream, stop=("end", ")")) -> Poly:
    total = ZERO_POLY
    sign = 1
    if ts.accept("-"):
        sign = -1
    elif ts.accept("+"):
        pass
    total = total + _parse_poly_term(ts) * sign
    while ts.peek().text in ("+", "-") and _next_is_poly_term(ts):
        sign = -1 if ts.next().text == "-" else 1
        total = total + _parse_poly_term(ts) * sign
    return total


def _next_is_poly_term(ts: TokenStream) -> bool:
    # a sign followed by anything but theta belongs to the polynomial, so a
    # bad term is reported at its own position rather than at the sign
    return ts.peek(1).text != "theta"


def parse_superfun_stream(ts: TokenStream) -> SuperFun:
    ev = ZERO_POLY
    od = ZERO_POLY
    if ts.peek().text == "theta":
        od = _parse_theta_part(ts)
    else:
        ev = parse_poly_stream(ts)
        if ts.peek().text == "+" and ts.peek(1).text == "theta":
            ts.next()
            od = _parse_theta_part(ts)
    return SuperFun(ev, od)


def _parse_theta_part(ts: TokenStream) -> Poly:
    ts.expect("theta")
    if not ts.accept("*"):
        return ONE_POLY
    ts.expect("(")
    p = parse_poly_stream(ts)
    ts.expect(")")
    return p


def parse_poly(text: str) -> Poly:
    ts = TokenStream(text)
    p = parse_poly_stream(ts)
    if not ts.at_end():
        ts.fail("trailing input")
    return p


def parse_superfun(text: str) -> SuperFun:
    """Inverse of :func:`format_superfun`, e.g. ``"x^2 - 1 + theta*(3/2*x)"``."""
    ts = TokenStream(text)
    f = parse_superfun_stream(ts)
    if not ts.at_end():
        ts.fail("trailing input")
    return f
