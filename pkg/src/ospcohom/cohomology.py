"""Degree 0 and 1 of the Chevalley-Eilenberg complex with operator coefficients.

The coefficient modules are infinite dimensional, so every computation is
done on a finite slice: cochains of a fixed parity, a fixed weight for the
diagonal action of ``X_x`` and operator order at most ``N``.  The action
never raises order and preserves weight, so each slice is a subcomplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .classical import (
    SL2_GENERATORS,
    ClassicalOp,
    classical_weight,
    lie_classical,
)
from .contact import OSP_BASIS, osp_bracket
from .diffop import (
    DOp,
    from_blocks,
    lie_op,
    monomial_weight,
    to_blocks,
    weight_keys,
)
from .linalg import Echelon, axpy, kernel
from .syntax import format_rat


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# -- coefficient modules ---------------------------------------------------


class OperatorModule:
    """A Lie (super)algebra basis acting on a graded operator space.

    Subclasses provide the generators, structure constants and the action on
    monomial keys; the complex machinery below is shared.
    """

    names: Tuple[str, ...]
    parities: Tuple[int, ...]
    ad_weights: Tuple[Fraction, ...]
    lam: Fraction
    mu: Fraction

    def __init__(self, lam, mu):
        self.lam = Fraction(lam)
        self.mu = Fraction(mu)
        self._act_cache: Dict[Tuple[int, Hashable], Dict[Hashable, Fraction]] = {}

    # structure
    def bracket(self, s: int, t: int) -> Mapping[int, Fraction]:
        raise NotImplementedError

    def keys(self, weight, parity: int, N: int) -> List[Hashable]:
        raise NotImplementedError

    def key_weight(self, key) -> Fraction:
        raise NotImplementedError

    def key_parity(self, key) -> int:
        raise NotImplementedError

    def make_op(self, coords: Mapping[Hashable, Fraction]):
        raise NotImplementedError

    def act_op(self, g: int, op):
        raise NotImplementedError

    def weight_step(self) -> Fraction:
        raise NotImplementedError

    @property
    def shift(self) -> Fraction:
        return self.mu - self.lam

    def index(self, name: str) -> int:
        return self.names.index(name)

    def act(self, g: int, key) -> Dict[Hashable, Fraction]:
        k = (g, key)
        hit = self._act_cache.get(k)
        if hit is None:
            hit = self.act_op(g, self.make_op({key: Fraction(1)})).monomials()
            self._act_cache[k] = hit
        return hit

    def pairs(self) -> List[Tuple[int, int]]:
        """Basis slots of 2-cochains: even pairs antisymmetric, odd pairs symmetric."""
        n = len(self.names)
        even = [i for i in range(n) if self.parities[i] == 0]
        odd = [i for i in range(n) if self.parities[i] == 1]
        out = [(s, t) for a, s in enumerate(even) for t in even[a + 1:]]
        out += [(s, t) for s in even for t in odd]
        out += [(s, t) for a, s in enumerate(odd) for t in odd[a:]]
        return out

    def weights(self, window) -> List[Fraction]:
        """Cochain weights within ``[-window, window]`` that can be nonempty."""
        step = self.weight_step()
        window = Fraction(window)
        lo = math.ceil((-window - self.shift) / step)
        hi = math.floor((window - self.shift) / step)
        return [self.shift + m * step for m in range(lo, hi + 1)]


class SuperModule(OperatorModule):
    """osp(1|2) acting on the super operators from F_lam to F_mu."""

    names = tuple(g.name for g in OSP_BASIS)
    parities = tuple(g.parity for g in OSP_BASIS)
    ad_weights = tuple(g.ad_weight for g in OSP_BASIS)

    def bracket(self, s, t):
        return osp_bracket(s, t)

    def keys(self, weight, parity, N):
        return weight_keys(self.lam, self.mu, weight, N, parity)

    def key_weight(self, key):
        return monomial_weight(key, self.lam, self.mu)

    def key_parity(self, key):
        return (key[1] + key[2]) % 2

    def make_op(self, coords):
        return DOp.from_monomials(coords, self.lam, self.mu)

    def act_op(self, g, op):
        return lie_op(OSP_BASIS[g], op)

    def weight_step(self):
        return Fraction(1, 2)

    def zero(self) -> DOp:
        return DOp(self.lam, self.mu)


class ClassicalModule(OperatorModule):
    """sl(2) acting on classical operators from F_lam to F_mu on S^1."""

    names = tuple(n for n, _, _ in SL2_GENERATORS)
    parities = (0, 0, 0)
    ad_weights = tuple(w for _, _, w in SL2_GENERATORS)

    _brackets = {
        (s, t): osp_bracket(s, t) for s in range(3) for t in range(3)
    }

    def bracket(self, s, t):
        return self._brackets[s, t]

    def keys(self, weight, parity, N):
        if parity:
            return []
        out = []
        base = Fraction(weight) - self.shift
        for i in range(N + 1):
            a = base + i
            if a.denominator == 1 and a >= 0:
                out.append((int(a), i))
        return out

    def key_weight(self, key):
        return classical_weight(key, self.lam, self.mu)

    def key_parity(self, key):
        return 0

    def make_op(self, coords):
        return ClassicalOp.from_monomials(coords, self.lam, self.mu)

    def act_op(self, g, op):
        return lie_classical(SL2_GENERATORS[g][1], op)

    def weight_step(self):
        return Fraction(1)

    def zero(self) -> ClassicalOp:
        return ClassicalOp(self.lam, self.mu)


# -- cochains --------------------------------------------------------------


@dataclass(frozen=True)
class Cochain1:
    """A parity-homogeneous linear map from the algebra to the operators."""

    lam: Fraction
    mu: Fraction
    parity: int
    values: Mapping[str, object]
    classical: bool = False

    def module(self) -> OperatorModule:
        cls = ClassicalModule if self.classical else SuperModule
        return _module(cls, self.lam, self.mu)

    def __getitem__(self, name: str):
        v = self.values.get(name)
        if v is None:
            return self.module().zero()
        return v

    def __add__(self, other: "Cochain1") -> "Cochain1":
        names = self.module().names
        return Cochain1(
            self.lam,
            self.mu,
            self.parity,
            {n: self[n] + other[n] for n in names},
            self.classical,
        )

    def __mul__(self, s) -> "Cochain1":
        return Cochain1(
            self.lam,
            self.mu,
            self.parity,
            {n: v * s for n, v in self.values.items()},
            self.classical,
        )

    __rmul__ = __mul__

    def __sub__(self, other: "Cochain1") -> "Cochain1":
        return self + other * -1

    def is_zero(self) -> bool:
        return not any(bool(v) for v in self.values.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain1):
            return NotImplemented
        names = self.module().names
        return (self.lam, self.mu, self.classical) == (other.lam, other.mu, other.classical) and all(
            self[n] == other[n] for n in names
        )

    def coords(self) -> Dict[Tuple[int, Hashable], Fraction]:
        m = self.module()
        out = {}
        for n in m.names:
            for k, v in self[n].monomials().items():
                out[m.index(n), k] = v
        return out

    def check_parity(self) -> bool:
        """Every value has parity ``p + p(g)``."""
        m = self.module()
        for i, n in enumerate(m.names):
            v = self[n]
            if v and v.parity != (self.parity + m.parities[i]) % 2:
                return False
        return True

    def max_order(self) -> int:
        return max((v.order for v in self.values.values() if v), default=-1)

    def __str__(self) -> str:
        m = self.module()
        return "; ".join(f"{n} -> {self[n]}" for n in m.names)


@dataclass(frozen=True)
class Cochain2:
    lam: Fraction
    mu: Fraction
    values: Mapping[Tuple[str, str], object]

    def is_zero(self) -> bool:
        return not any(bool(v) for v in self.values.values())

    def nonzero_slots(self) -> List[Tuple[str, str]]:
        return [k for k, v in self.values.items() if v]


@lru_cache(maxsize=512)
def _module(cls, lam: Fraction, mu: Fraction) -> OperatorModule:
    return cls(lam, mu)


def super_module(lam, mu) -> SuperModule:
    return _module(SuperModule, Fraction(lam), Fraction(mu))


def classical_module(lam, mu) -> ClassicalModule:
    return _module(ClassicalModule, Fraction(lam), Fraction(mu))


def _module_for(op) -> OperatorModule:
    if isinstance(op, ClassicalOp):
        return classical_module(op.src, op.dst)
    return super_module(op.src, op.dst)


def delta0(A) -> Cochain1:
    """``(delta A)(X) = L^{lam,mu}_X(A)`` on each basis element."""
    p = A.parity
    if p is None:
        raise ValueError("delta0 needs a parity-homogeneous operator")
    m = _module_for(A)
    return Cochain1(
        m.lam,
        m.mu,
        p,
        {n: m.act_op(i, A) for i, n in enumerate(m.names)},
        isinstance(m, ClassicalModule),
    )


def delta1(c: Cochain1) -> Cochain2:
    """``Y([X,Z]) - L_X Y(Z) + (-1)^{p(X)p(Z)} L_Z Y(X)`` on every slot."""
    m = c.module()
    out = {}
    for s, t in m.pairs():
        val = m.zero()
        for k, coef in m.bracket(s, t).items():
            val = val + c[m.names[k]] * coef
        val = val - m.act_op(s, c[m.names[t]])
        val = val + m.act_op(t, c[m.names[s]]) * _sign(m.parities[s] * m.parities[t])
        out[m.names[s], m.names[t]] = val
    return Cochain2(m.lam, m.mu, out)


def is_cocycle(c: Cochain1) -> bool:
    return delta1(c).is_zero()


# -- weight slices ---------------------------------------------------------


@dataclass
class Slice:
    """One parity/weight/order-truncated piece of ``C^0 -> C^1 -> C^2``."""

    parity: int
    weight: Fraction
    N: int
    c0: List[Hashable]
    c1: List[Tuple[int, Hashable]]
    d0_cols: List[Dict]
    d1_cols: List[Dict]
    rank_d0: int = 0
    kernel_d1: List[Dict] = field(default_factory=list)
    h1_reps: List[Dict] = field(default_factory=list)

    @property
    def dim_c1(self) -> int:
        return len(self.c1)

    @property
    def dim_z1(self) -> int:
        return len(self.kernel_d1)

    @property
    def h1(self) -> int:
        return self.dim_z1 - self.rank_d0


def _delta1_column(m: OperatorModule, pairs, g: int, key) -> Dict:
    col: Dict = {}
    for slot, (s, t) in enumerate(pairs):
        coef = m.bracket(s, t).get(g)
        if coef:
            col[slot, key] = col.get((slot, key), 0) + coef
        if t == g:
            for k, v in m.act(s, key).items():
                nv = col.get((slot, k), 0) - v
                if nv:
                    col[slot, k] = nv
                else:
                    col.pop((slot, k), None)
        if s == g:
            sg = _sign(m.parities[s] * m.parities[t])
            for k, v in m.act(t, key).items():
                nv = col.get((slot, k), 0) + sg * v
                if nv:
                    col[slot, k] = nv
                else:
                    col.pop((slot, k), None)
    return {k: v for k, v in col.items() if v}


def build_slice(m: OperatorModule, parity: int, weight, N: int) -> Slice:
    weight = Fraction(weight)
    c0 = m.keys(weight, parity, N)
    c1 = []
    for g in range(len(m.names)):
        for key in m.keys(weight + m.ad_weights[g], (parity + m.parities[g]) % 2, N):
            c1.append((g, key))
    d0_cols = []
    for key in c0:
        col = {}
        for g in range(len(m.names)):
            for k, v in m.act(g, key).items():
                col[g, k] = v
        d0_cols.append(col)
    pairs = m.pairs()
    d1_cols = [_delta1_column(m, pairs, g, key) for g, key in c1]
    return Slice(parity, weight, N, c0, c1, d0_cols, d1_cols)


def solve_slice(sl: Slice) -> Slice:
    """Fill in ranks, the cocycle kernel and representatives of H^1."""
    image = Echelon()
    for col in sl.d0_cols:
        image.add(col)
    sl.rank_d0 = image.rank
    kern = kernel(sl.d1_cols)
    sl.kernel_d1 = [{sl.c1[i]: v for i, v in vec.items()} for vec in kern]
    reps = []
    for vec in sl.kernel_d1:
        if image.add(vec) is None:
            reps.append(vec)
    sl.h1_reps = reps
    if len(reps) != sl.h1:
        raise ArithmeticError("coboundaries are not contained in the cocycles")
    return sl


def compute_slice(m: OperatorModule, parity: int, weight, N: int) -> Slice:
    return solve_slice(build_slice(m, parity, weight, N))


def coords_to_cochain(m: OperatorModule, parity: int, coords: Mapping) -> Cochain1:
    per_gen: Dict[int, Dict] = {}
    for (g, key), v in coords.items():
        per_gen.setdefault(g, {})[key] = v
    values = {m.names[g]: m.make_op(d) for g, d in sorted(per_gen.items())}
    return Cochain1(m.lam, m.mu, parity, values, isinstance(m, ClassicalModule))


# -- H^1 -------------------------------------------------------------------


def default_order_cap(lam, mu) -> int:
    """Order cap in powers of etabar: ``max(ceil(2(mu-lam)+6), 8)``."""
    return max(math.ceil(2 * (Fraction(mu) - Fraction(lam)) + 6), 8)


def default_classical_cap(lam, mu) -> int:
    """Order cap in powers of d_x: ``max(ceil(mu-lam)+3, 4)``."""
    return max(math.ceil(Fraction(mu) - Fraction(lam) + 3), 4)


@dataclass
class H1Report:
    lam: Fraction
    mu: Fraction
    dim_even: int
    dim_odd: int
    N: int
    W: Fraction
    stabilized: bool
    cocycle_basis: List[Cochain1] = field(default_factory=list)
    offzero_exact: bool = True
    defects: List[str] = field(default_factory=list)
    dims_next: Tuple[int, int] = (0, 0)
    slices: List[Tuple[int, Fraction, int, int, int]] = field(default_factory=list)
    classical: bool = False

    @property
    def dims(self) -> Tuple[int, int]:
        return self.dim_even, self.dim_odd

    def as_record(self) -> Dict[str, str]:
        return {
            "lambda": format_rat(self.lam),
            "mu": format_rat(self.mu),
            "dim_even": str(self.dim_even),
            "dim_odd": str(self.dim_odd),
            "N": str(self.N),
            "W": format_rat(self.W),
            "stabilized": "true" if self.stabilized else "false",
        }

    def to_line(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.as_record().items())

    def to_json(self) -> Dict[str, object]:
        return {
            "lambda": format_rat(self.lam),
            "mu": format_rat(self.mu),
            "dim_even": self.dim_even,
            "dim_odd": self.dim_odd,
            "N": self.N,
            "W": format_rat(self.W),
            "stabilized": self.stabilized,
        }


def _dims_at(m: OperatorModule, N: int, W, keep_basis: bool):
    dims = [0, 0]
    basis: List[Cochain1] = []
    defects = []
    table = []
    for w in m.weights(W):
        for p in (0, 1):
            sl = compute_slice(m, p, w, N)
            if not sl.c1:
                continue
            table.append((p, w, sl.dim_c1, sl.dim_z1, sl.rank_d0))
            if w == 0:
                dims[p] += sl.h1
                if keep_basis:
                    basis.extend(coords_to_cochain(m, p, r) for r in sl.h1_reps)
            elif sl.h1:
                defects.append(
                    f"parity {p} weight {format_rat(w)}: dim Z1={sl.dim_z1} rank B1={sl.rank_d0}"
                )
    return tuple(dims), basis, defects, table


def h1_dims(lam, mu, N: Optional[int] = None, W=3, classical: bool = False) -> H1Report:
    """Dimensions of ``H^1_0`` and ``H^1_1`` from the weight-zero slices.

    Nonzero weight slices inside the window are computed too and any
    cohomology found there is reported as a defect.  The whole computation
    is repeated with cap ``N + 2`` (``N + 1`` for the classical module) to
    decide stabilization.
    """
    lam, mu = Fraction(lam), Fraction(mu)
    if classical:
        m = classical_module(lam, mu)
        N = default_classical_cap(lam, mu) if N is None else N
        step = 1
    else:
        m = super_module(lam, mu)
        N = default_order_cap(lam, mu) if N is None else N
        step = 2
    if N < 0:
        raise ValueError("order cap must be non-negative")
    dims, basis, defects, table = _dims_at(m, N, W, keep_basis=True)
    dims2, _, defects2, _ = _dims_at(m, N + step, W, keep_basis=False)
    return H1Report(
        lam,
        mu,
        dims[0],
        dims[1],
        N,
        Fraction(W),
        dims == dims2,
        basis,
        not (defects or defects2),
        defects + [f"N+{step}: {d}" for d in defects2],
        dims2,
        table,
        classical,
    )


def sl2_h1_dim(lam, mu, N: Optional[int] = None, W=3) -> int:
    return h1_dims(lam, mu, N, W, classical=True).dim_even


# -- coboundaries ----------------------------------------------------------


def _weight_components(c: Cochain1) -> Dict[Fraction, Dict]:
    m = c.module()
    out: Dict[Fraction, Dict] = {}
    for (g, key), v in c.coords().items():
        w = m.key_weight(key) - m.ad_weights[g]
        out.setdefault(w, {})[g, key] = v
    return out


def solve_coboundary(c: Cochain1, N: int):
    """An operator ``A`` of order at most ``N`` with ``delta0(A) == c``, or None."""
    m = c.module()
    if c.is_zero():
        return m.zero()
    total: Dict = {}
    for w, target in _weight_components(c).items():
        keys = m.keys(w, c.parity, N)
        e = Echelon()
        for key in keys:
            col = {}
            for g in range(len(m.names)):
                for k, v in m.act(g, key).items():
                    col[g, k] = v
            e.add(col, tag=key)
        sol = e.solve(target)
        if sol is None:
            return None
        for key, v in sol.items():
            total[key] = total.get(key, 0) + v
    A = m.make_op(total)
    if delta0_any_parity(A, c.parity) != c:
        raise ArithmeticError("preimage does not reproduce the cochain")
    return A


def delta0_any_parity(A, parity: int) -> Cochain1:
    if not A:
        m = _module_for(A)
        return Cochain1(m.lam, m.mu, parity, {}, isinstance(m, ClassicalModule))
    d = delta0(A)
    return Cochain1(d.lam, d.mu, parity, d.values, d.classical)


def rank_mod_coboundaries(cocycles: Sequence[Cochain1], N: int) -> int:
    """Rank of the classes of ``cocycles`` modulo coboundaries of order <= N."""
    if not cocycles:
        return 0
    m = cocycles[0].module()
    parity = cocycles[0].parity
    weights = set()
    for c in cocycles:
        weights.update(_weight_components(c))
    image = Echelon()
    for w in sorted(weights):
        for key in m.keys(w, parity, N):
            col = {}
            for g in range(len(m.names)):
                for k, v in m.act(g, key).items():
                    col[g, k] = v
            image.add(col)
    r0 = image.rank
    for c in cocycles:
        image.add(c.coords())
    return image.rank - r0


# -- components over sl(2) -------------------------------------------------

HALF = Fraction(1, 2)

#: component name -> (argument class, block, source shift, target shift)
COMPONENTS = {
    0: {
        "000": ("sl2", (0, 0), 0, 0),
        "00h": ("sl2", (1, 1), HALF, HALF),
        "110": ("h", (1, 0), 0, HALF),
        "11h": ("h", (0, 1), HALF, 0),
    },
    1: {
        "010": ("sl2", (1, 0), 0, HALF),
        "01h": ("sl2", (0, 1), HALF, 0),
        "100": ("h", (0, 0), 0, 0),
        "10h": ("h", (1, 1), HALF, HALF),
    },
}

_SL2_NAMES = tuple(g.name for g in OSP_BASIS if g.parity == 0)
_H_NAMES = tuple(g.name for g in OSP_BASIS if g.parity == 1)


def project_components(c: Cochain1) -> Dict[str, Dict[str, ClassicalOp]]:
    """The four classical maps making up a homogeneous cochain.

    Keys are ``"000", "00h", "110", "11h"`` for even cochains and
    ``"010", "01h", "100", "10h"`` for odd ones (``h`` standing for 1/2).
    Each value maps generator names to classical operators.
    """
    blocks = {n: to_blocks(c[n]) for n in _SL2_NAMES + _H_NAMES}
    out = {}
    for comp, (args, block, ds, dt) in COMPONENTS[c.parity].items():
        names = _SL2_NAMES if args == "sl2" else _H_NAMES
        out[comp] = {
            n: ClassicalOp(c.lam + ds, c.mu + dt, blocks[n][block]) for n in names
        }
    return out


def assemble_components(comps: Mapping[str, Mapping[str, ClassicalOp]], lam, mu, parity: int) -> Cochain1:
    values = {}
    for comp, (args, block, _, _) in COMPONENTS[parity].items():
        for n, op in comps.get(comp, {}).items():
            values.setdefault(n, {})[block] = dict(op.terms)
    ops = {}
    for n in _SL2_NAMES + _H_NAMES:
        b = values.get(n, {})
        ops[n] = from_blocks({k: b.get(k, {}) for k in ((0, 0), (0, 1), (1, 0), (1, 1))}, lam, mu)
    return Cochain1(Fraction(lam), Fraction(mu), parity, ops)
