"""Explicit 1-cocycles, super and classical, and the check that they span H^1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .classical import SL2_GENERATORS, ClassicalOp
from .cohomology import (
    Cochain1,
    H1Report,
    default_classical_cap,
    default_order_cap,
    delta1,
    h1_dims,
    rank_mod_coboundaries,
    solve_coboundary,
)
from .contact import OSP_BASIS
from .diffop import DOp
from .superfield import ddx, eta_pow, etabar_pow
from .syntax import format_rat


@dataclass(frozen=True)
class NamedCocycle:
    name: str
    lam: Fraction
    mu: Fraction
    parity: int
    cochain: Cochain1

    @property
    def order(self) -> int:
        return self.cochain.max_order()

    def row(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "lambda": format_rat(self.lam),
            "mu": format_rat(self.mu),
            "parity": self.parity,
            "order": self.order,
            "classical": self.cochain.classical,
        }


def upsilon_even(lam) -> Cochain1:
    """``X_F -> F'`` (multiplication) on operators from F_lam to F_lam."""
    lam = Fraction(lam)
    values = {g.name: DOp.mult(ddx(g.gen), lam) for g in OSP_BASIS}
    c = Cochain1(lam, lam, 0, values)
    assert c.check_parity()
    return c


def odd_weights(k: int):
    if k < 1:
        raise ValueError("k must be a positive integer")
    return Fraction(1 - k, 2), Fraction(k, 2)


def upsilon_odd(k: int) -> Cochain1:
    """``X_F -> etabar^2(F) etabar^{2k-1}``."""
    lam, mu = odd_weights(k)
    values = {g.name: DOp(lam, mu, {2 * k - 1: etabar_pow(g.gen, 2)}) for g in OSP_BASIS}
    c = Cochain1(lam, mu, 1, values)
    assert c.check_parity()
    return c


def upsilon_tilde_odd(k: int) -> Cochain1:
    """``X_F -> (k-1) eta^4(F) etabar^{2k-3} + eta^3(F) etabar^{2k-2}``."""
    lam, mu = odd_weights(k)
    values = {}
    for g in OSP_BASIS:
        terms = {2 * k - 2: eta_pow(g.gen, 3)}
        if k > 1:
            # the first term carries the factor (k-1) and is absent at k = 1
            terms[2 * k - 3] = eta_pow(g.gen, 4) * (k - 1)
        values[g.name] = DOp(lam, mu, terms)
    c = Cochain1(lam, mu, 1, values)
    assert c.check_parity()
    return c


def _classical(lam, mu, builder) -> Cochain1:
    values = {name: builder(F) for name, F, _ in SL2_GENERATORS}
    return Cochain1(Fraction(lam), Fraction(mu), 0, values, classical=True)


def c_prime(lam) -> Cochain1:
    """``F d/dx -> F'`` on D_{lam,lam}."""
    lam = Fraction(lam)
    return _classical(lam, lam, lambda F: ClassicalOp(lam, lam, {0: F.deriv()}))


def c_k(k: int) -> Cochain1:
    """``F d/dx -> F' d_x^k`` on D_{(1-k)/2,(1+k)/2}."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    lam, mu = Fraction(1 - k, 2), Fraction(1 + k, 2)
    return _classical(lam, mu, lambda F: ClassicalOp(lam, mu, {k: F.deriv()}))


def c_tilde_k(k: int) -> Cochain1:
    """``F d/dx -> F'' d_x^{k-1}`` on D_{(1-k)/2,(1+k)/2}."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    lam, mu = Fraction(1 - k, 2), Fraction(1 + k, 2)
    return _classical(lam, mu, lambda F: ClassicalOp(lam, mu, {k - 1: F.deriv(2)}))


def classical_cocycles(lam=None, k: Optional[int] = None) -> Dict[str, NamedCocycle]:
    out = {}
    if lam is not None:
        c = c_prime(lam)
        out["C'"] = NamedCocycle(f"C'_{format_rat(lam)}", c.lam, c.mu, 0, c)
    if k is not None:
        for name, c in ((f"C_{k}", c_k(k)), (f"C~_{k}", c_tilde_k(k))):
            out[name.split("_")[0]] = NamedCocycle(name, c.lam, c.mu, 0, c)
    return out


def super_cocycles(lam, mu) -> List[NamedCocycle]:
    """The explicit generators attached to ``(lam, mu)``, if any."""
    lam, mu = Fraction(lam), Fraction(mu)
    out = []
    if lam == mu:
        out.append(NamedCocycle(f"Upsilon_{{{format_rat(lam)},{format_rat(lam)}}}", lam, mu, 0, upsilon_even(lam)))
    k = odd_resonance(lam, mu)
    if k is not None:
        out.append(NamedCocycle(f"Upsilon_{k}", lam, mu, 1, upsilon_odd(k)))
        out.append(NamedCocycle(f"Upsilon~_{k}", lam, mu, 1, upsilon_tilde_odd(k)))
    return out


def catalogue(lams=(), k_max: int = 5) -> List[NamedCocycle]:
    out = []
    for lam in lams:
        out.extend(super_cocycles(lam, lam))
    for k in range(1, k_max + 1):
        lam, mu = odd_weights(k)
        out.extend(super_cocycles(lam, mu))
    for lam in lams:
        out.extend(classical_cocycles(lam=lam).values())
    for k in range(1, k_max + 1):
        out.extend(classical_cocycles(k=k).values())
    return out


# -- predictions -----------------------------------------------------------


def odd_resonance(lam, mu) -> Optional[int]:
    """``k >= 1`` with ``(lam, mu) = ((1-k)/2, k/2)``, or None."""
    k = 2 * Fraction(mu)
    if k.denominator != 1 or k < 1:
        return None
    k = int(k)
    return k if Fraction(lam) == Fraction(1 - k, 2) else None


def classical_resonance(lam, mu) -> Optional[int]:
    """``k >= 1`` with ``(lam, mu) = ((1-k)/2, (1+k)/2)``, or None."""
    k = Fraction(mu) - Fraction(lam)
    if k.denominator != 1 or k < 1:
        return None
    k = int(k)
    return k if Fraction(lam) == Fraction(1 - k, 2) else None


def predicted_dims(lam, mu):
    """``(dim H^1_0, dim H^1_1)`` as stated for osp(1|2)."""
    return (1 if Fraction(lam) == Fraction(mu) else 0, 2 if odd_resonance(lam, mu) else 0)


def predicted_sl2_dim(lam, mu) -> int:
    if Fraction(lam) == Fraction(mu):
        return 1
    return 2 if classical_resonance(lam, mu) else 0


def resonance_label(lam, mu) -> str:
    if Fraction(lam) == Fraction(mu):
        return "diagonal"
    k = odd_resonance(lam, mu)
    if k is not None:
        return f"odd-resonant k={k}"
    return "generic"


# -- verification ----------------------------------------------------------


@dataclass
class Verdict:
    lam: Fraction
    mu: Fraction
    passed: bool
    expected: tuple
    report: H1Report
    generators: List[str] = field(default_factory=list)
    problems: List[Dict[str, object]] = field(default_factory=list)

    def summary(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        gens = ", ".join(self.generators) or "none"
        text = (
            f"{head} lambda={format_rat(self.lam)} mu={format_rat(self.mu)} "
            f"dims={self.report.dims} expected={self.expected} generators: {gens}"
        )
        for p in self.problems:
            text += "\n  " + ", ".join(f"{k}={v}" for k, v in p.items())
        return text


def verify_theorem(lam, mu, N: Optional[int] = None, W=3) -> Verdict:
    lam, mu = Fraction(lam), Fraction(mu)
    report = h1_dims(lam, mu, N, W)
    N = report.N
    expected = predicted_dims(lam, mu)
    problems: List[Dict[str, object]] = []
    if report.dims != expected:
        problems.append({"check": "dimensions", "computed": report.dims, "expected": expected})
    if not report.stabilized:
        problems.append({"check": "stabilization", "at_N": report.dims, "at_N+2": report.dims_next})
    for d in report.defects:
        problems.append({"check": "nonzero weight slice", "detail": d})
    named = super_cocycles(lam, mu)
    for nc in named:
        bad = delta1(nc.cochain).nonzero_slots()
        if bad:
            problems.append({"check": "cocycle", "name": nc.name, "slots": bad})
        if solve_coboundary(nc.cochain, N) is not None:
            problems.append({"check": "nontrivial", "name": nc.name, "N": N})
    for parity in (0, 1):
        group = [nc.cochain for nc in named if nc.parity == parity]
        r = rank_mod_coboundaries(group, N)
        if r != report.dims[parity]:
            problems.append(
                {"check": "span", "parity": parity, "weight": 0, "rank": r, "dim": report.dims[parity]}
            )
    return Verdict(lam, mu, not problems, expected, report, [nc.name for nc in named], problems)


def verify_classical(lam, mu, N: Optional[int] = None, W=3) -> Verdict:
    """Classical analogue: dims of H^1(sl(2); D_{lam,mu}) and the named cocycles."""
    lam, mu = Fraction(lam), Fraction(mu)
    report = h1_dims(lam, mu, N, W, classical=True)
    N = report.N
    expected = (predicted_sl2_dim(lam, mu), 0)
    problems: List[Dict[str, object]] = []
    if report.dims != expected:
        problems.append({"check": "dimensions", "computed": report.dims, "expected": expected})
    if not report.stabilized:
        problems.append({"check": "stabilization", "at_N": report.dims, "at_N+1": report.dims_next})
    for d in report.defects:
        problems.append({"check": "nonzero weight slice", "detail": d})
    named: List[NamedCocycle] = []
    if lam == mu:
        named += classical_cocycles(lam=lam).values()
    k = classical_resonance(lam, mu)
    if k is not None:
        named += classical_cocycles(k=k).values()
    for nc in named:
        bad = delta1(nc.cochain).nonzero_slots()
        if bad:
            problems.append({"check": "cocycle", "name": nc.name, "slots": bad})
        if solve_coboundary(nc.cochain, N) is not None:
            problems.append({"check": "nontrivial", "name": nc.name, "N": N})
    r = rank_mod_coboundaries([nc.cochain for nc in named], N)
    if r != report.dim_even:
        problems.append({"check": "span", "weight": 0, "rank": r, "dim": report.dim_even})
    return Verdict(lam, mu, not problems, expected, report, [nc.name for nc in named], problems)


__all__ = [
    "NamedCocycle",
    "Verdict",
    "c_k",
    "c_prime",
    "c_tilde_k",
    "catalogue",
    "classical_cocycles",
    "default_classical_cap",
    "default_order_cap",
    "odd_resonance",
    "predicted_dims",
    "predicted_sl2_dim",
    "resonance_label",
    "super_cocycles",
    "upsilon_even",
    "upsilon_odd",
    "upsilon_tilde_odd",
    "verify_classical",
    "verify_theorem",
]
