"""Smith normal form over the integers and abelian invariants.

Arithmetic is on Python ints, so entries never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + Z_{d1} + ... with d1 | d2 | ..., each d > 1."""
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion not a divisibility chain: {self.torsion}")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.free_rank == 0 else None

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], ncols: int) -> AbelianInvariants:
        nonzero = [abs(d) for d in diag if d != 0]
        return cls(ncols - len(nonzero), tuple(d for d in nonzero if d != 1))

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> AbelianInvariants:
        """Canonical form of a direct sum of cyclic groups (0 means Z)."""
        free = sum(1 for d in orders if d == 0)
        diag = smith_normal_form([[d if i == j else 0 for j in range(len(orders))]
                                  for i, d in enumerate(orders) if d != 0]) if any(orders) else []
        return cls(free, tuple(d for d in diag if d > 1))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        i = 0
        tors = self.torsion
        while i < len(tors):
            j = i
            while j < len(tors) and tors[j] == tors[i]:
                j += 1
            parts.append(f"Z{tors[i]}" if j - i == 1 else f"Z{tors[i]}^{j - i}")
            i = j
        return " x ".join(parts) if parts else "1"

    @classmethod
    def parse(cls, text: str) -> AbelianInvariants:
        """Inverse of ``str``: e.g. ``Z2^2 x Z4`` or ``Z^2`` or ``1``."""
        text = text.strip()
        if text in ("1", ""):
            return cls(0, ())
        orders = []
        for part in text.split("x"):
            part = part.strip()
            base, _, mult = part.partition("^")
            k = int(mult) if mult else 1
            d = 0 if base == "Z" else int(base[1:])
            orders += [d] * k
        return cls.from_cyclic_orders(orders)


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns min(rows, cols) entries d1 | d2 | ... (non-negative; trailing
    zeros mark rank deficiency).
    """
    A = [list(map(int, row)) for row in M]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        # pick the nonzero entry of least absolute value in the remaining block
        piv = None
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv and piv[0] == 1:
                break
        if piv is None:
            break
        _, i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            # clear column t
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, ncols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if A[i][t]:
                        done = False
            # clear row t
            rt = A[t]
            for j in range(t + 1, ncols):
                if rt[j]:
                    q = rt[j] // p
                    if q:
                        for row in A[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                # divisibility of the rest by the pivot
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rb, rt = A[bad], A[t]
                for j in range(t, ncols):
                    rt[j] += rb[j]
                continue
            # move the least nonzero entry of row/column t to the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, nrows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, ncols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (min(nrows, ncols) - len(diag))
    return diag


def abelian_invariants_of_relations(rows: Sequence[dict[int, int]], ncols: int) -> AbelianInvariants:
    """Invariants of Z^ncols modulo the row lattice, rows given sparsely.

    Unit pivots are eliminated first on the sparse rows (this removes
    almost everything for presentations coming out of Reidemeister-Schreier);
    the remaining block goes through the dense Smith form.
    """
    rows = [dict(r) for r in rows if any(r.values())]
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    col_rows: dict[int, set[int]] = {}
    for ri, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    alive = [True] * len(rows)
    eliminated_cols = 0
    while True:
        pivot = None
        for ri, r in enumerate(rows):
            if not alive[ri]:
                continue
            for c, v in r.items():
                if v in (1, -1):
                    if pivot is None or len(col_rows[c]) < pivot[2]:
                        pivot = (ri, c, len(col_rows[c]))
            if pivot and pivot[2] == 1:
                break
        if pivot is None:
            break
        ri, c, _ = pivot
        prow = rows[ri]
        sign = prow[c]
        alive[ri] = False
        for cc in prow:
            col_rows[cc].discard(ri)
        for rj in list(col_rows[c]):
            r = rows[rj]
            f = r[c] * sign  # r -= f * prow (prow[c] = sign, sign^2 = 1)
            for cc, v in prow.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    if cc not in r:
                        col_rows[cc].add(rj)
                    r[cc] = nv
                else:
                    if cc in r:
                        del r[cc]
                        col_rows[cc].discard(rj)
        del col_rows[c]
        eliminated_cols += 1
    rest = [r for ri, r in enumerate(rows) if alive[ri] and r]
    cols = sorted({c for r in rest for c in r})
    remaining = ncols - eliminated_cols
    if not rest:
        return AbelianInvariants(remaining, ())
    pos = {c: i for i, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][pos[c]] = v
    diag = smith_normal_form(dense)
    nonzero = [d for d in diag if d]
    return AbelianInvariants(remaining - len(nonzero), tuple(d for d in nonzero if d > 1))
