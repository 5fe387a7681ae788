"""Finite permutation groups with full element tables.

Permutations compose left to right: ``(p * q)(i) = q(p(i))``, and
conjugation is ``x ** h = h^-1 * x * h``.  This matches the convention in
which the generating systems of the classification are written, so that a
spherical system ``(h1, ..., hr)`` satisfies ``h1 * ... * hr == identity``.

A :class:`PermGroup` stores every element; all group operations are
answered by table lookups on element indices.  Groups are small (the
largest group the classification needs has order 360), so exhaustive
scans are preferred over orbit algorithms.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

CLOSURE_CAP = 10000
AUTOMORPHISM_CAP = 400


class CapExceeded(RuntimeError):
    """A configured size cap was hit."""


class NotInSubgroup(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles."""
        img = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        """Parse 1-based disjoint-cycle notation.

        ``(1,2,3)(4,5)`` and the compact ``(123)(45)`` are both accepted;
        the compact form needs single-digit points.
        """
        text = text.strip()
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if "," in body or " " in body:
                pts = [int(t) - 1 for t in re.split(r"[,\s]+", body) if t]
            else:
                pts = [int(ch) - 1 for ch in body]
            cycles.append(pts)
        if re.sub(r"\([^()]*\)", "", text).strip() not in ("", "()"):
            raise ValueError(f"bad cycle notation: {text!r}")
        top = max((p for c in cycles for p in c), default=-1) + 1
        degree = top if degree is None else degree
        if top > degree:
            raise ValueError(f"point {top} exceeds degree {degree}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        img = self.images
        o = other.images
        return Permutation(tuple(o[i] for i in img))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)


def perm_order(p: Permutation) -> int:
    """Least k > 0 with p**k the identity (lcm of cycle lengths)."""
    return math.lcm(1, *(len(c) for c in p.cycles()))


def _codes(arr: np.ndarray) -> np.ndarray:
    """Injective integer code for each row of a permutation array."""
    n, d = arr.shape
    if d == 0:
        return np.zeros(n, dtype=object)
    if d ** d < 2 ** 62:
        weights = np.array([d ** i for i in range(d)], dtype=np.int64)
        return arr.astype(np.int64) @ weights
    return np.array([hash(tuple(r)) for r in arr.tolist()], dtype=object)


class PermGroup:
    """A finite permutation group with all elements listed.

    ``elements[0]`` is the identity; the remaining elements appear in BFS
    order from the identity, multiplying on the right by the generators in
    index order.  Most methods work with element *indices*.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 cap: int = CLOSURE_CAP, name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        ident = Permutation.identity(degree)
        elements = [ident]
        index = {ident.images: 0}
        parent = [(-1, -1)]
        right = []  # right[i][k] = index of elements[i] * generators[k]
        queue = deque([0])
        gens = [g.images for g in self.generators]
        while queue:
            i = queue.popleft()
            img = elements[i].images
            row = []
            for k, g in enumerate(gens):
                prod = tuple(g[x] for x in img)
                j = index.get(prod)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise CapExceeded(f"group closure exceeds {cap} elements")
                    index[prod] = j
                    elements.append(Permutation(prod))
                    parent.append((i, k))
                    queue.append(j)
                row.append(j)
            right.append(row)
        self.elements: list[Permutation] = elements
        self.index: dict[tuple[int, ...], int] = index
        self._parent = parent
        self.right_gen = np.array(right, dtype=np.int32).reshape(len(elements), len(gens))

    # -- basic structure -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} of order {self.order} on {self.degree} points>"

    def idx(self, p: Permutation | Sequence[int]) -> int:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        try:
            return self.index[images]
        except KeyError:
            raise NotInSubgroup(f"{p} is not in the group") from None

    def perm(self, i: int) -> Permutation:
        return self.elements[i]

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table: ``table[a, b]`` is the index of a*b.

        Column for ``b * g`` is obtained from column ``b`` by one gather
        through the right-regular action of the generator ``g``.
        """
        n = self.order
        dtype = np.int16 if n < 2 ** 15 else np.int32
        tab = np.empty((n, n), dtype=dtype)
        tab[:, 0] = np.arange(n)
        for j in range(1, n):
            i, k = self._parent[j]
            tab[:, j] = self.right_gen[tab[:, i], k]
        return tab

    @cached_property
    def mul(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inv(self) -> list[int]:
        return np.argmin(self.table, axis=1).tolist() if self.order > 1 else [0]

    @cached_property
    def orders(self) -> list[int]:
        return [perm_order(p) for p in self.elements]

    def power(self, a: int, k: int) -> int:
        k %= self.orders[a]
        res = 0
        row = self.mul
        for _ in range(k):
            res = row[res][a]
        return res

    def conj(self, x: int, h: int) -> int:
        """Index of h^-1 x h."""
        m = self.mul
        return m[m[self.inv[h]][x]][h]

    def product(self, idxs: Iterable[int]) -> int:
        res = 0
        m = self.mul
        for a in idxs:
            res = m[res][a]
        return res

    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    # -- subgroups ---------------------------------------------------------
    def closure_indices(self, gens: Iterable[int]) -> set[int]:
        """Element indices of the subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        seen = {0}
        frontier = [0]
        m = self.mul
        while frontier:
            new = []
            for a in frontier:
                row = m[a]
                for g in gens:
                    b = row[g]
                    if b not in seen:
                        seen.add(b)
                        new.append(b)
            frontier = new
        return seen

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.closure_indices(gens)) == self.order

    def subgroup(self, gens: Iterable[int]) -> PermGroup:
        return PermGroup(self.degree, [self.elements[g] for g in gens])

    @cached_property
    def derived_subgroup_order(self) -> int:
        m = self.mul
        inv = self.inv
        comms = {m[m[inv[a]][inv[b]]][m[a][b]] for a in self.generator_indices
                 for b in range(self.order)}
        # normal closure of generator commutators == derived subgroup
        sub = self.closure_indices(comms)
        while True:
            extra = {self.conj(x, g) for x in sub for g in self.generator_indices} - sub
            if not extra:
                return len(sub)
            sub = self.closure_indices(sub | extra)

    @cached_property
    def generator_indices(self) -> list[int]:
        return [self.idx(g) for g in self.generators]

    # -- conjugacy -----------------------------------------------------------
    @cached_property
    def class_id(self) -> list[int]:
        """Conjugacy class label of each element (label = least member)."""
        t = self.table
        inv = np.asarray(self.inv)
        hs = np.arange(self.order)
        cid = np.full(self.order, -1, dtype=np.int64)
        for x in range(self.order):
            if cid[x] >= 0:
                continue
            cid[t[t[inv, x], hs]] = x
        return cid.tolist()

    @cached_property
    def class_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in self.class_id:
            sizes[c] = sizes.get(c, 0) + 1
        return sizes

    def class_size(self, x: int) -> int:
        return self.class_sizes[self.class_id[x]]

    def is_conjugate(self, x: int, y: int) -> bool:
        return self.class_id[x] == self.class_id[y]

    def centralizer_indices(self, x: int) -> list[int]:
        m = self.mul
        return [c for c in range(self.order) if m[c][x] == m[x][c]]


@dataclass(frozen=True)
class ConjugacyWitness:
    conjugate: bool
    witness: Permutation | None = None


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism given by its image on every element index."""
    source: PermGroup = field(repr=False)
    target: PermGroup = field(repr=False)
    image_table: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.image_table[i]

    def apply(self, p: Permutation) -> Permutation:
        return self.target.perm(self.image_table[self.source.idx(p)])

    def compose(self, other: GroupMap) -> GroupMap:
        """``self`` followed by ``other``."""
        return GroupMap(self.source, other.target,
                        tuple(other.image_table[j] for j in self.image_table))


def group_closure(degree: int, generators: Sequence[Permutation],
                  cap: int = CLOSURE_CAP) -> PermGroup:
    return PermGroup(degree, generators, cap=cap)


def elements_of_order(G: PermGroup, k: int) -> list[int]:
    return [i for i, o in enumerate(G.orders) if o == k]


def conjugacy(G: PermGroup, x: Permutation, y: Permutation) -> ConjugacyWitness:
    """Find h in G with h^-1 x h = y by scanning G in element order."""
    xi, yi = G.idx(x), G.idx(y)
    for h in range(G.order):
        if G.conj(xi, h) == yi:
            return ConjugacyWitness(True, G.perm(h))
    return ConjugacyWitness(False, None)


def conjugating_element(G: PermGroup, x: int, y: int) -> int | None:
    for h in range(G.order):
        if G.conj(x, h) == y:
            return h
    return None


def centralizer_and_class(G: PermGroup, x: Permutation) -> tuple[PermGroup, int]:
    xi = G.idx(x)
    cent = G.centralizer_indices(xi)
    return G.subgroup(cent), G.order // len(cent)


def direct_product(G: PermGroup, H: PermGroup,
                   cap: int = CLOSURE_CAP) -> tuple[PermGroup, GroupMap, GroupMap]:
    """G x H acting on disjoint point sets, with the two embeddings."""
    if G.order * H.order > cap:
        raise CapExceeded(f"direct product of order {G.order * H.order} exceeds {cap}")
    dg, dh = G.degree, H.degree

    def left(p: Permutation) -> Permutation:
        return Permutation(p.images + tuple(range(dg, dg + dh)))

    def right(p: Permutation) -> Permutation:
        return Permutation(tuple(range(dg)) + tuple(dg + i for i in p.images))

    gens = [left(g) for g in G.generators] + [right(h) for h in H.generators]
    P = PermGroup(dg + dh, gens, cap=cap)
    inG = GroupMap(G, P, tuple(P.idx(left(p)) for p in G.elements))
    inH = GroupMap(H, P, tuple(P.idx(right(p)) for p in H.elements))
    return P, inG, inH


def small_generating_set(G: PermGroup) -> list[int]:
    """Greedy generating set, preferring elements from small conjugacy classes.

    Smaller classes mean fewer candidate images when searching for
    automorphisms.
    """
    if G.order == 1:
        return []
    by_cost = sorted(range(1, G.order), key=lambda i: (G.class_size(i), -G.orders[i], i))
    gens: list[int] = []
    current = {0}
    while len(current) < G.order:
        best = None
        for g in by_cost:
            if g in current:
                continue
            size = len(G.closure_indices(gens + [g]))
            if best is None or size > best[0]:
                best = (size, g)
                if size == G.order:
                    break
        gens.append(best[1])
        current = G.closure_indices(gens)
    # drop redundant generators
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and G.generates(rest):
            gens = rest
    return gens


def _spanning_words(G: PermGroup, gens: Sequence[int]) -> list[tuple[int, int]]:
    """BFS tree over G w.r.t. gens: entry j is (parent index, generator slot)."""
    tree = [(-1, -1)] * G.order
    seen = [False] * G.order
    seen[0] = True
    order = [0]
    m = G.mul
    for a in order:
        for k, g in enumerate(gens):
            b = m[a][g]
            if not seen[b]:
                seen[b] = True
                tree[b] = (a, k)
                order.append(b)
    if len(order) != G.order:
        raise ValueError("gens do not generate the group")
    return [tree[i] for i in range(G.order)], order


def _isomorphism_search(G: PermGroup, H: PermGroup, first_only: bool) -> list[tuple[int, ...]]:
    """Isomorphisms G -> H as image tables, by search over images of a generating set.

    Candidate images are pruned by element order and class size; each
    candidate assignment is extended along a BFS tree and accepted if it
    respects right multiplication by every generator and is bijective.
    """
    if G.order != H.order:
        return []
    gens = small_generating_set(G)
    if not gens:
        return [(0,)]
    tree, bfs = _spanning_words(G, gens)
    mG = G.mul
    mH = H.mul
    cands = []
    for g in gens:
        key = (G.orders[g], G.class_size(g))
        cands.append([h for h in range(H.order) if (H.orders[h], H.class_size(h)) == key])
    # relations to verify: a*g_k for every element a and generator g_k
    checks = [(a, k, mG[a][g]) for a in range(G.order) for k, g in enumerate(gens)]
    out: list[tuple[int, ...]] = []

    def extend(images):
        f = [0] * G.order
        for b in bfs[1:]:
            a, k = tree[b]
            f[b] = mH[f[a]][images[k]]
        for a, k, b in checks:
            if mH[f[a]][images[k]] != f[b]:
                return None
        if len(set(f)) != G.order:
            return None
        return tuple(f)

    # orders of g_i g_k and g_i^-1 g_k must be preserved for every pair
    oG, oH = G.orders, H.orders
    pair_orders = [[(oG[mG[gens[i]][gens[k]]], oG[mG[G.inv[gens[i]]][gens[k]]])
                    for i in range(k)] for k in range(len(gens))]

    def rec(prefix):
        if first_only and out:
            return
        k = len(prefix)
        if k == len(gens):
            f = extend(prefix)
            if f is not None:
                out.append(f)
            return
        want = pair_orders[k]
        for h in cands[k]:
            if all((oH[mH[x][h]], oH[mH[H.inv[x]][h]]) == want[i] for i, x in enumerate(prefix)):
                rec(prefix + [h])

    rec([])
    return sorted(out)


def automorphisms(G: PermGroup, cap: int = AUTOMORPHISM_CAP) -> list[GroupMap]:
    """All automorphisms of G, sorted by image table."""
    if G.order > cap:
        raise CapExceeded(f"automorphism search limited to order {cap}")
    return [GroupMap(G, G, f) for f in _isomorphism_search(G, G, first_only=False)]


def fingerprint(G: PermGroup) -> tuple:
    """Cheap isomorphism invariant: order, derived order, center order and
    the multiset of (element order, class size, number of square roots)."""
    roots = [0] * G.order
    m = G.mul
    for x in range(G.order):
        roots[m[x][x]] += 1
    stats: dict[tuple[int, int, int], int] = {}
    for x in range(G.order):
        key = (G.orders[x], G.class_size(x), roots[x])
        stats[key] = stats.get(key, 0) + 1
    center = sum(1 for x in range(G.order) if G.class_size(x) == 1)
    return (G.order, G.derived_subgroup_order, center, tuple(sorted(stats.items())))


def find_isomorphism(G: PermGroup, H: PermGroup) -> GroupMap | None:
    """An isomorphism G -> H, or None."""
    if G.order != H.order or fingerprint(G) != fingerprint(H):
        return None
    found = _isomorphism_search(G, H, first_only=True)
    return GroupMap(G, H, found[0]) if found else None


def are_isomorphic(G: PermGroup, H: PermGroup) -> bool:
    return find_isomorphism(G, H) is not None


def express_as_word(G: PermGroup, gens: Sequence[Permutation],
                    g: Permutation) -> tuple[int, ...]:
    """Shortest word in ``gens`` and their inverses evaluating to ``g``.

    Letters are signed 1-based generator numbers (``-2`` is the inverse of
    the second generator).  Ties are broken by letter order
    ``1, -1, 2, -2, ...``.
    """
    return _word_search(G, [G.idx(x) for x in gens])(G.idx(g))


def _word_search(G: PermGroup, gen_idx: Sequence[int]):
    """Return a lookup element-index -> shortest word for the given generators."""
    m = G.mul
    letters = []
    for k, x in enumerate(gen_idx, start=1):
        letters.append((k, x))
        letters.append((-k, G.inv[x]))
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        new = []
        for a in frontier:
            w = words[a]
            for lab, x in letters:
                b = m[a][x]
                if b not in words:
                    words[b] = w + (lab,)
                    new.append(b)
        frontier = new

    def lookup(i: int) -> tuple[int, ...]:
        try:
            return words[i]
        except KeyError:
            raise NotInSubgroup(f"element {G.perm(i)} not in subgroup") from None
    return lookup


def evaluate_word(G: PermGroup, gen_idx: Sequence[int], word: Iterable[int]) -> int:
    res = 0
    m = G.mul
    for lab in word:
        x = gen_idx[abs(lab) - 1]
        res = m[res][x if lab > 0 else G.inv[x]]
    return res
