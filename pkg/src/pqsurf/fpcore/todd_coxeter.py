"""Coset enumeration (HLT strategy with lookahead).

The enumeration kernel is compiled with numba; it works on a flat int32
coset table where column ``2*g`` is generator ``g`` and ``2*g + 1`` its
inverse.  Cosets are numbered by definition order and the final table is
renumbered to the order of live cosets, so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .words import Presentation, Word

DEFAULT_COSET_LIMIT = 10 ** 6


class CosetLimitExceeded(RuntimeError):
    """Enumeration did not close within the coset limit (index too big or infinite)."""


@dataclass(frozen=True)
class CosetTable:
    """A complete coset table.

    ``action[c][2*g]`` is the coset reached from ``c`` by generator ``g``
    and ``action[c][2*g + 1]`` by its inverse.  Coset 0 is the subgroup.
    """
    ngens: int
    action: np.ndarray
    subgroup_words: tuple[Word, ...] = ()

    @property
    def coset_count(self) -> int:
        return int(self.action.shape[0])

    def image(self, coset: int, word: Sequence[int]) -> int:
        a = self.action
        for x in word:
            coset = int(a[coset, 2 * (x - 1)] if x > 0 else a[coset, 2 * (-x - 1) + 1])
        return coset

    def is_closed(self) -> bool:
        return bool((self.action >= 0).all())

    @classmethod
    def from_generator_actions(cls, perms: Sequence[Sequence[int]],
                               subgroup_words: Sequence[Word] = ()) -> CosetTable:
        """Table from the permutation action of each generator on cosets."""
        n = len(perms[0]) if perms else 1
        act = np.empty((n, 2 * len(perms)), dtype=np.int32)
        for g, p in enumerate(perms):
            p = np.asarray(p, dtype=np.int32)
            act[:, 2 * g] = p
            inv = np.empty_like(p)
            inv[p] = np.arange(n, dtype=np.int32)
            act[:, 2 * g + 1] = inv
        return cls(len(perms), act, tuple(subgroup_words))


def _encode(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    flat = []
    offs = [0]
    for w in words:
        flat.extend(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in w)
        offs.append(len(flat))
    return np.array(flat, dtype=np.int32), np.array(offs, dtype=np.int64)


@njit(cache=True)
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r


@njit(cache=True)
def _merge(p, queue, qlen, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return qlen, 0
    lo = min(a, b)
    hi = max(a, b)
    p[hi] = lo
    queue[qlen] = hi
    return qlen + 1, 1


@njit(cache=True)
def _coincidence(table, p, queue, a, b):
    """Process the coincidence a = b; returns number of cosets killed."""
    ncols = table.shape[1]
    qlen, killed = _merge(p, queue, 0, a, b)
    i = 0
    while i < qlen:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d >= 0:
                xi = x ^ 1
                table[d, xi] = -1
                mu = _rep(p, g)
                nu = _rep(p, d)
                if table[mu, x] >= 0:
                    qlen, k = _merge(p, queue, qlen, nu, table[mu, x])
                    killed += k
                elif table[nu, xi] >= 0:
                    qlen, k = _merge(p, queue, qlen, mu, table[nu, xi])
                    killed += k
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu
    return killed


@njit(cache=True)
def _scan(table, p, queue, a, rel, lo, hi, state, define):
    """Scan coset a under rel[lo:hi]; define cosets if ``define``.

    state = [next_free, live, limit]; returns 0 ok, 1 out of space.
    """
    f = a
    i = lo
    b = a
    j = hi - 1
    while True:
        while i <= j and table[f, rel[i]] >= 0:
            f = table[f, rel[i]]
            i += 1
        if i > j:
            if f != a:
                state[1] -= _coincidence(table, p, queue, f, a)
            return 0
        while j >= i and table[b, rel[j] ^ 1] >= 0:
            b = table[b, rel[j] ^ 1]
            j -= 1
        if j < i:
            state[1] -= _coincidence(table, p, queue, f, b)
            return 0
        if i == j:
            table[f, rel[i]] = b
            table[b, rel[i] ^ 1] = f
            return 0
        if not define:
            return 0
        if state[0] >= state[2]:
            return 1
        n = state[0]
        state[0] += 1
        state[1] += 1
        table[f, rel[i]] = n
        table[n, rel[i] ^ 1] = f


@njit(cache=True)
def _hlt(table, p, queue, rel, roff, sub, soff, state):
    """Run HLT from the state; returns 0 when closed, 1 when out of space."""
    ncols = table.shape[1]
    # subgroup generators on coset 0
    for s in range(len(soff) - 1):
        if _scan(table, p, queue, 0, sub, soff[s], soff[s + 1], state, True):
            return 1
    a = state[3]
    while a < state[0]:
        if p[a] == a:
            for r in range(len(roff) - 1):
                if p[a] != a:
                    break
                if _scan(table, p, queue, a, rel, roff[r], roff[r + 1], state, True):
                    state[3] = a
                    return 1
            if p[a] == a:
                for x in range(ncols):
                    if table[a, x] < 0:
                        if state[0] >= state[2]:
                            state[3] = a
                            return 1
                        n = state[0]
                        state[0] += 1
                        state[1] += 1
                        table[a, x] = n
                        table[n, x ^ 1] = a
        a += 1
    state[3] = a
    return 0


@njit(cache=True)
def _lookahead(table, p, queue, rel, roff, state):
    for a in range(state[0]):
        if p[a] == a:
            for r in range(len(roff) - 1):
                if p[a] != a:
                    break
                _scan(table, p, queue, a, rel, roff[r], roff[r + 1], state, False)


def _compact(table: np.ndarray, p: np.ndarray, used: int, pos: int):
    live = np.flatnonzero(p[:used] == np.arange(used))
    newnum = np.full(used, -1, dtype=np.int64)
    newnum[live] = np.arange(len(live))
    sub = table[live]
    mask = sub >= 0
    sub[mask] = newnum[sub[mask]]
    table[:] = -1
    table[: len(live)] = sub
    p[:] = np.arange(len(p))
    newpos = int(np.searchsorted(live, pos))
    return len(live), newpos


def todd_coxeter(P: Presentation, subgroup_words: Sequence[Word] = (),
                 coset_limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    Raises :class:`CosetLimitExceeded` if the table fills up and a
    lookahead pass frees less than 5% of ``coset_limit``.
    """
    if coset_limit < 1:
        raise ValueError("coset_limit must be positive")
    ncols = max(2 * P.ngens, 1)
    rel, roff = _encode(P.relators)
    sub, soff = _encode(subgroup_words)
    cap = coset_limit
    table = np.full((cap, ncols), -1, dtype=np.int32)
    p = np.arange(cap, dtype=np.int32)
    queue = np.zeros(cap, dtype=np.int32)
    # next_free, live, limit, resume position
    state = np.array([1, 1, cap, 0], dtype=np.int64)
    if P.ngens == 0:
        return CosetTable(0, np.zeros((1, 0), dtype=np.int32), tuple(subgroup_words))
    while True:
        status = _hlt(table, p, queue, rel, roff, sub, soff, state)
        if status == 0:
            break
        _lookahead(table, p, queue, rel, roff, state)
        used, pos = int(state[0]), int(state[3])
        live, newpos = _compact(table, p, used, pos)
        # give up when lookahead recovers almost nothing; continuing would
        # only define a handful of cosets per full pass over the table
        if live >= cap - max(1, cap // 20):
            raise CosetLimitExceeded(f"more than {coset_limit} cosets")
        state[0] = live
        state[1] = live
        state[3] = newpos
    used = int(state[0])
    live, _ = _compact(table, p, used, used)
    act = table[:live].copy()
    if (act < 0).any():
        raise RuntimeError("coset enumeration finished with an incomplete table")
    return CosetTable(P.ngens, _standardize(act), tuple(subgroup_words))


def _standardize(act: np.ndarray) -> np.ndarray:
    """Renumber cosets in BFS order over columns (standard form)."""
    n = act.shape[0]
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    lst = act.tolist()
    for c in order:
        for d in lst[c]:
            if not seen[d]:
                seen[d] = True
                order.append(d)
    newnum = np.empty(n, dtype=np.int64)
    newnum[order] = np.arange(n)
    return newnum[act[order]].astype(np.int32)


def coset_enumeration_index(P: Presentation, subgroup_words: Sequence[Word] = (),
                            coset_limit: int = DEFAULT_COSET_LIMIT) -> int | None:
    try:
        return todd_coxeter(P, subgroup_words, coset_limit).coset_count
    except CosetLimitExceeded:
        return None
