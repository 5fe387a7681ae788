"""Independent brute-force oracles for the search (small groups only)."""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from pqsurf.permcore import PermGroup


def cyclic(G: PermGroup, x: int) -> frozenset[int]:
    out = {0}
    y = x
    while y != 0:
        out.add(y)
        y = G.mul[y][x]
    return frozenset(out)


def node_oracle(G: PermGroup, s1, s2) -> tuple[bool, Fraction]:
    """(worse_than_node, nodes) from fixed points of C1 x C2.

    A point over the j-th branch point of C1 is a coset g<h_j> with
    stabilizer g<h_j>g^-1.  G-orbits of pairs (<h>, g<k>) correspond to
    double cosets <h> g <k> of size |<h>||<k>| / |I_g|, where
    I_g = <h> & g<k>g^-1 is the stabilizer of the pair.  A stabilizer of
    order 2 is a node; a larger one is a worse singularity.
    """
    nodes = Fraction(0)
    worse = False
    for h in s1:
        H = cyclic(G, h)
        for k in s2:
            K = cyclic(G, k)
            for g in range(G.order):
                gi = G.inv[g]
                I = H & frozenset(G.mul[G.mul[g][y]][gi] for y in K)
                if len(I) > 2:
                    worse = True
                elif len(I) == 2:
                    # this pair's orbit is counted once per element of its double coset
                    nodes += Fraction(2, len(H) * len(K))
    return worse, nodes


def brute_automorphisms(G: PermGroup) -> list[tuple[int, ...]]:
    """Automorphisms by trying every image of a generating set."""
    gens = G.generator_indices
    m = G.mul
    n = G.order
    out = []
    pools = [[y for y in range(n) if G.orders[y] == G.orders[x]] for x in gens]
    for images in itertools.product(*pools):
        f = [-1] * n
        f[0] = 0
        queue = [0]
        ok = True
        for a in queue:
            for x, y in zip(gens, images):
                b, c = m[a][x], m[f[a]][y]
                if f[b] == -1:
                    f[b] = c
                    queue.append(b)
                elif f[b] != c:
                    ok = False
                    break
            if not ok:
                break
        if not ok or len(set(f)) != n:
            continue
        if all(f[m[a][b]] == m[f[a]][f[b]] for a in range(n) for b in range(n)):
            out.append(tuple(f))
    return out


def systems_any_order(G: PermGroup, sig) -> list[tuple[int, ...]]:
    """All generating tuples with product 1 whose orders are a rearrangement of sig."""
    want = Counter(sig)
    allowed = [x for x in range(G.order) if G.orders[x] in want]
    out = []
    r = len(sig)
    for head in itertools.product(allowed, repeat=r - 1):
        p = 0
        for x in head:
            p = G.mul[p][x]
        last = G.inv[p]
        tup = head + (last,)
        if Counter(G.orders[x] for x in tup) != want:
            continue
        if len(G.closure_indices(tup)) == G.order:
            out.append(tup)
    return out


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def braid_orbits(G: PermGroup, systems) -> dict[tuple[int, ...], tuple[int, ...]]:
    uf = UnionFind()
    for t in systems:
        uf.find(t)
        for i in range(len(t) - 1):
            x, y = t[i], t[i + 1]
            u = t[:i] + (y, G.mul[G.mul[G.inv[y]][x]][y]) + t[i + 2:]
            uf.union(t, u)
    return {t: uf.find(t) for t in systems}


def family_oracle(G: PermGroup, T1, T2, k_squared: int) -> int:
    """Number of classes of accepting pairs under braid moves on each
    factor and the diagonal action of Aut(G)."""
    sys1 = systems_any_order(G, T1)
    sys2 = sys1 if tuple(T1) == tuple(T2) else systems_any_order(G, T2)
    orb1 = braid_orbits(G, sys1)
    orb2 = orb1 if sys2 is sys1 else braid_orbits(G, sys2)
    reps1 = sorted(set(orb1.values()))
    reps2 = sorted(set(orb2.values()))
    target = 8 - k_squared
    accepted = []
    for a in reps1:
        for b in reps2:
            worse, nodes = node_oracle(G, a, b)
            if not worse and nodes == target:
                accepted.append((a, b))
    auts = brute_automorphisms(G)
    uf = UnionFind()
    for a, b in accepted:
        uf.find((a, b))
        for f in auts:
            fa = orb1[tuple(f[x] for x in a)]
            fb = orb2[tuple(f[x] for x in b)]
            uf.union((a, b), (fa, fb))
    return len({uf.find(p) for p in accepted})
