"""Reidemeister-Schreier rewriting and Tietze simplification."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

from .snf import AbelianInvariants, abelian_invariants_of_relations
from .todd_coxeter import CosetTable
from .words import (Presentation, Word, canonical_relator, cyclic_reduce,
                    free_reduce, inverse)


class WordNotInSubgroup(ValueError):
    pass


@dataclass(frozen=True)
class SchreierRewriter:
    """Rewrites words of the parent group lying in the subgroup.

    ``gen_of[c][g]`` is the 1-based Schreier generator for the edge
    ``(c, g)`` or 0 for a spanning-tree edge.
    """
    table: CosetTable
    gen_of: tuple[tuple[int, ...], ...]
    transversal: tuple[Word, ...]
    generator_words: tuple[Word, ...]

    def rewrite(self, word: Sequence[int], start: int = 0, check: bool = True) -> Word:
        act = self.table.action
        c = start
        out = []
        for x in word:
            if x > 0:
                g = x - 1
                s = self.gen_of[c][g]
                if s:
                    out.append(s)
                c = int(act[c, 2 * g])
            else:
                g = -x - 1
                c = int(act[c, 2 * g + 1])
                s = self.gen_of[c][g]
                if s:
                    out.append(-s)
        if check and c != start:
            raise WordNotInSubgroup(f"word ends in coset {c}, not {start}")
        return free_reduce(out)

    def __call__(self, word: Sequence[int]) -> Word:
        return self.rewrite(word)


def reidemeister_schreier(P: Presentation, table: CosetTable) -> tuple[Presentation, SchreierRewriter]:
    """Presentation of the subgroup with coset table ``table``.

    Generators are the Schreier generators ``t(c) g t(c g)^-1`` for the
    non-tree edges of a BFS spanning tree (cosets visited in order,
    columns in order); relators are the rewritten conjugates
    ``t(c) r t(c)^-1`` for every coset ``c`` and relator ``r``.
    """
    if not table.is_closed():
        raise ValueError("coset table is not closed")
    n = table.coset_count
    k = P.ngens
    act = table.action.tolist()
    trans: list[Word | None] = [None] * n
    trans[0] = ()
    tree = set()
    order = [0]
    for c in order:
        for col in range(2 * k):
            d = act[c][col]
            if trans[d] is None:
                g = col // 2
                if col % 2 == 0:
                    trans[d] = trans[c] + (g + 1,)
                    tree.add((c, g))
                else:
                    trans[d] = trans[c] + (-(g + 1),)
                    tree.add((d, g))
                order.append(d)
    if len(order) != n:
        raise ValueError("coset table is not transitive")
    gen_of = [[0] * k for _ in range(n)]
    gen_words = []
    for c in range(n):
        for g in range(k):
            if (c, g) not in tree:
                gen_words.append(free_reduce(trans[c] + (g + 1,) + inverse(trans[act[c][2 * g]])))
                gen_of[c][g] = len(gen_words)
    rw = SchreierRewriter(table, tuple(map(tuple, gen_of)), tuple(trans), tuple(gen_words))
    rels = []
    seen = set()
    for c in range(n):
        for r in P.relators:
            w = canonical_relator(rw.rewrite(r, start=c))
            if w and w not in seen:
                seen.add(w)
                rels.append(w)
    return Presentation(len(gen_words), tuple(rels)), rw


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    rows = []
    for r in P.relators:
        row: dict[int, int] = {}
        for a in r:
            g = abs(a) - 1
            row[g] = row.get(g, 0) + (1 if a > 0 else -1)
        rows.append(row)
    return abelian_invariants_of_relations(rows, P.ngens)


@dataclass(frozen=True)
class Simplified:
    """Result of Tietze simplification.

    ``kept`` lists the original generator numbers that survive (in order,
    1-based); ``images[g-1]`` expresses original generator ``g`` as a word
    in the surviving generators.
    """
    presentation: Presentation
    kept: tuple[int, ...]
    images: tuple[Word, ...]

    def map_word(self, w: Sequence[int]) -> Word:
        out: list[int] = []
        for a in w:
            out.extend(self.images[a - 1] if a > 0 else inverse(self.images[-a - 1]))
        return free_reduce(out)


def simplify(P: Presentation, max_relator_length: int = 30,
             growth_limit: float = 1.5) -> Simplified:
    """Bounded Tietze simplification.

    Repeatedly removes duplicate and empty relators and eliminates a
    generator occurring exactly once in a relator, always choosing the
    shortest such relator (ties: lowest relator position, then lowest
    generator).  An elimination is skipped if the defining relator is
    longer than ``max_relator_length`` or if it would push the total
    relator length above ``growth_limit`` times the length seen after
    the cheap (length <= 2) eliminations.  The isomorphism type is
    preserved; the output is deterministic.
    """
    ngens = P.ngens
    images: list[Word | None] = [None] * ngens  # None = still a generator
    rels: dict[int, Word] = {}
    occ: dict[int, set[int]] = {g: set() for g in range(1, ngens + 1)}
    seen: dict[Word, int] = {}
    counter = 0

    def add(w: Word):
        nonlocal counter
        w = canonical_relator(w)
        if not w or w in seen:
            return
        rid = counter
        counter += 1
        seen[w] = rid
        rels[rid] = w
        for a in set(map(abs, w)):
            occ[a].add(rid)

    def remove(rid: int):
        w = rels.pop(rid)
        del seen[w]
        for a in set(map(abs, w)):
            occ[a].discard(rid)

    for r in P.relators:
        add(r)

    total = sum(map(len, rels.values()))
    budget = None

    def candidates():
        best = None
        for rid, w in rels.items():
            L = len(w)
            if best is not None and L >= best[0]:
                continue
            if L > max_relator_length:
                continue
            counts: dict[int, int] = {}
            for a in w:
                counts[abs(a)] = counts.get(abs(a), 0) + 1
            once = sorted(g for g, c in counts.items() if c == 1)
            if once:
                # prefer the generator occurring in the fewest relators
                g = min(once, key=lambda g: (len(occ[g]), g))
                best = (L, rid, g)
        return best

    while True:
        cand = candidates()
        if cand is None:
            break
        L, rid, g = cand
        if L > 2 and budget is None:
            budget = growth_limit * max(total, 1)
        w = rels[rid]
        i = next(i for i, a in enumerate(w) if abs(a) == g)
        rot = w[i:] + w[:i]
        rest = rot[1:]
        expr = inverse(rest) if rot[0] > 0 else rest
        users = sorted(occ[g] - {rid})
        if budget is not None:
            hits = sum(1 for u in users for a in rels[u] if abs(a) == g)
            delta = hits * (len(expr) - 1) - L
            if total + delta > budget:
                break
        remove(rid)
        images[g - 1] = expr
        for u in users:
            old = rels[u]
            remove(u)
            new = []
            for a in old:
                if abs(a) == g:
                    new.extend(expr if a > 0 else inverse(expr))
                else:
                    new.append(a)
            add(tuple(new))
        total = sum(map(len, rels.values()))

    # express every original generator in surviving generators
    resolved: dict[int, Word] = {}

    def resolve(g: int) -> Word:
        if g in resolved:
            return resolved[g]
        if images[g - 1] is None:
            resolved[g] = (g,)
            return resolved[g]
        out: list[int] = []
        for a in images[g - 1]:
            sub = resolve(abs(a))
            out.extend(sub if a > 0 else inverse(sub))
        resolved[g] = free_reduce(out)
        return resolved[g]

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 10 * ngens + 1000))
    try:
        full = [resolve(g) for g in range(1, ngens + 1)]
    finally:
        sys.setrecursionlimit(old_limit)
    kept = tuple(g for g in range(1, ngens + 1) if images[g - 1] is None)
    renum = {g: i + 1 for i, g in enumerate(kept)}

    def ren(w: Word) -> Word:
        return tuple(renum[a] if a > 0 else -renum[-a] for a in w)

    labels = None
    if P.labels is not None:
        labels = tuple(P.labels[g - 1] for g in kept)
    new_rels = sorted((ren(w) for w in rels.values()), key=lambda w: (len(w), [(abs(a), a < 0) for a in w]))
    return Simplified(Presentation(len(kept), tuple(new_rels), labels), kept,
                      tuple(ren(w) for w in full))


def quotient_and_simplify(P: Presentation, extra_relators: Sequence[Word] = (),
                          **kwargs) -> Presentation:
    """Presentation of P / <<extra_relators>> after Tietze simplification."""
    Q = Presentation(P.ngens, tuple(P.relators) + tuple(cyclic_reduce(w) for w in extra_relators),
                     P.labels)
    return simplify(Q, **kwargs).presentation
