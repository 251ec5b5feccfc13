"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping hashable, mutually comparable row keys to
Fractions.  Elimination is deterministic: pivots are taken at the smallest
row key still present in the reduced vector.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[Hashable, Fraction]


def axpy(y: Vector, a: Fraction, x: Mapping[Hashable, Fraction]) -> None:
    """``y += a*x`` in place, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally maintained reduced echelon basis of a span.

    Each stored vector remembers the combination of inserted vectors it came
    from, which gives kernels and preimages for free.
    """

    def __init__(self):
        self.rows: Dict[Hashable, Vector] = {}
        self.combos: Dict[Hashable, Vector] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[Hashable, Fraction]) -> Tuple[Vector, Vector]:
        """Residual of ``v`` modulo the span, and the combination removed."""
        r = dict(v)
        combo: Vector = {}
        for p, row in self.rows.items():
            c = r.get(p)
            if c:
                axpy(r, -c, row)
                axpy(combo, c, self.combos[p])
        return r, combo

    def add(self, v: Mapping[Hashable, Fraction], tag: Optional[Hashable] = None) -> Optional[Vector]:
        """Insert ``v``.  Returns None if independent, else a kernel relation.

        The relation is a combination of inserted tags summing to zero.
        """
        tag = self.count if tag is None else tag
        self.count += 1
        r, combo = self.reduce(v)
        if not r:
            rel = {k: -c for k, c in combo.items()}
            rel[tag] = rel.get(tag, 0) + 1
            return {k: c for k, c in rel.items() if c}
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        combo = {k: -c * inv for k, c in combo.items()}
        combo[tag] = combo.get(tag, 0) + inv
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
                axpy(self.combos[q], -c, combo)
        self.rows[p] = r
        self.combos[p] = combo
        return None

    def contains(self, v: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(v)[0]

    def solve(self, v: Mapping[Hashable, Fraction]) -> Optional[Vector]:
        """Combination of inserted tags equal to ``v``, or None."""
        r, combo = self.reduce(v)
        if r:
            return None
        return {k: c for k, c in combo.items() if c}


def rank(vectors: Iterable[Mapping[Hashable, Fraction]]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(columns: Sequence[Mapping[Hashable, Fraction]]) -> List[Vector]:
    """Basis of ``{c : sum_i c_i columns[i] = 0}``, indexed by column position."""
    e = Echelon()
    out = []
    for i, col in enumerate(columns):
        rel = e.add(col, tag=i)
        if rel is not None:
            out.append(rel)
    return out


def relative_rank(base: Iterable[Mapping], extra: Iterable[Mapping]) -> int:
    """``rank(base + extra) - rank(base)``."""
    e = Echelon()
    for v in base:
        e.add(v)
    r0 = e.rank
    for v in extra:
        e.add(v)
    return e.rank - r0
