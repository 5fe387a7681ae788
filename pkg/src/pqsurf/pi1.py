"""Fundamental group of (C1 x C2)/G from a pair of spherical systems.

With T_i the polygonal groups and phi_i: T_i -> G the maps sending the
standard generators to the systems, the fiber product
H = {(x, y) : phi1(x) = phi2(y)} has index |G| in T1 x T2, and the
fundamental group of the surface is H modulo its torsion elements.
Tors(H) is normally generated by explicit words built from involutions
shared (up to conjugacy) between powers of the two systems.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence


from .enumeration import SphericalSystem
from .fpcore.rewriting import (SchreierRewriter, Simplified, abelian_invariants,
                               reidemeister_schreier, simplify)
from .fpcore.snf import AbelianInvariants
from .fpcore.todd_coxeter import (DEFAULT_COSET_LIMIT, CosetLimitExceeded,
                                  CosetTable, _standardize, todd_coxeter)
from .fpcore.words import Presentation, Word, commutator, format_word, inverse
from .permcore import (CapExceeded, PermGroup, _word_search,
                       conjugating_element)

log = logging.getLogger(__name__)

DEFAULT_INDEX_BOUND = 32
EPIMORPHISM_NODE_CAP = 5_000_000


def polygonal_presentation(orders: Sequence[int]) -> Presentation:
    """T(0; m_1, ..., m_r) = <c_i | c_i^m_i, c_1 ... c_r>."""
    r = len(orders)
    rels: list[Word] = [(i + 1,) * m for i, m in enumerate(orders)]
    rels.append(tuple(range(1, r + 1)))
    return Presentation(r, tuple(rels), tuple(f"c{i}" for i in range(1, r + 1)))


def system_kernel(sys_: SphericalSystem) -> Presentation:
    """Reidemeister-Schreier presentation of the kernel of T -> G.

    The kernel is the fundamental group of the covering curve, so its
    abelianization is free of rank 2g.
    """
    G, s = _elements(sys_)
    P = polygonal_presentation([G.orders[h] for h in s])
    m = G.mul
    table = CosetTable.from_generator_actions([[m[g][h] for g in range(G.order)] for h in s])
    K, _ = reidemeister_schreier(P, table)
    return K


def polygonal_product_presentation(orders1: Sequence[int], orders2: Sequence[int]) -> Presentation:
    """T1 x T2 on generators c_1..c_r, d_1..d_s."""
    r, s = len(orders1), len(orders2)
    rels: list[Word] = [(i + 1,) * m for i, m in enumerate(orders1)]
    rels.append(tuple(range(1, r + 1)))
    rels += [(r + j + 1,) * m for j, m in enumerate(orders2)]
    rels.append(tuple(range(r + 1, r + s + 1)))
    rels += [commutator((i,), (j,)) for i in range(1, r + 1) for j in range(r + 1, r + s + 1)]
    labels = tuple(f"c{i}" for i in range(1, r + 1)) + tuple(f"d{j}" for j in range(1, s + 1))
    return Presentation(r + s, tuple(rels), labels)


@dataclass(frozen=True)
class FiberProductData:
    group: PermGroup = field(repr=False)
    sys1: tuple[int, ...]
    sys2: tuple[int, ...]
    product_presentation: Presentation = field(repr=False)
    table: CosetTable = field(repr=False)
    H_presentation: Presentation = field(repr=False)
    rewriter: SchreierRewriter = field(repr=False)

    @property
    def index(self) -> int:
        return self.table.coset_count

    @property
    def generator_words(self) -> tuple[Word, ...]:
        """Each Schreier generator of H as a word in c's and d's."""
        return self.rewriter.generator_words

    def image(self, word: Sequence[int]) -> tuple[int, int]:
        """(phi1, phi2) image of a word in c/d letters, as element indices."""
        G = self.group
        r = len(self.sys1)
        x = y = 0
        m, inv = G.mul, G.inv
        for a in word:
            k = abs(a) - 1
            if k < r:
                g = self.sys1[k]
                x = m[x][g if a > 0 else inv[g]]
            else:
                g = self.sys2[k - r]
                y = m[y][g if a > 0 else inv[g]]
        return x, y


def _elements(sys_) -> tuple[PermGroup, tuple[int, ...]]:
    if isinstance(sys_, SphericalSystem):
        return sys_.group, sys_.elements
    raise TypeError("expected a SphericalSystem")


def fiber_product(sys1: SphericalSystem, sys2: SphericalSystem) -> FiberProductData:
    """Coset table of H in T1 x T2 and its Reidemeister-Schreier presentation.

    Cosets are the elements of G: the coset of (x, y) is phi2(y)^-1 phi1(x),
    so c_i acts by g -> g h_i and d_j by g -> k_j^-1 g.
    """
    G, s1 = _elements(sys1)
    G2, s2 = _elements(sys2)
    if G is not G2:
        raise ValueError("systems must live in the same group")
    P = polygonal_product_presentation([G.orders[h] for h in s1], [G.orders[h] for h in s2])
    n = G.order
    m, inv = G.mul, G.inv
    perms = [[m[g][h] for g in range(n)] for h in s1]
    perms += [[m[inv[k]][g] for g in range(n)] for k in s2]
    table = CosetTable.from_generator_actions(perms)
    H, rw = reidemeister_schreier(P, table)
    return FiberProductData(G, tuple(s1), tuple(s2), P, table, H, rw)


@dataclass(frozen=True)
class TorsionWordSet:
    """Words c_i^a t^-1 d_j^b t normally generating Tors(H).

    ``words`` are in c/d letters; ``rewritten`` are the same elements in
    the Schreier generators of H.
    """
    words: tuple[Word, ...]
    rewritten: tuple[Word, ...]
    # (i, j, centralizer element) for each word, 1-based positions
    sources: tuple[tuple[int, int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.words)


def torsion_index_set(G: PermGroup, s1: Sequence[int], s2: Sequence[int]):
    """Yield (i, j, a, b, h, c): positions with even orders whose half
    powers x = h_i^a, y = k_j^b are conjugate (h^-1 x h = y), and every
    c centralizing x."""
    for i, g in enumerate(s1):
        if G.orders[g] % 2:
            continue
        a = G.orders[g] // 2
        x = G.power(g, a)
        for j, k in enumerate(s2):
            if G.orders[k] % 2:
                continue
            b = G.orders[k] // 2
            y = G.power(k, b)
            h = conjugating_element(G, x, y)
            if h is None:
                continue
            for c in G.centralizer_indices(x):
                yield i, j, a, b, h, c


def torsion_generators(sys1: SphericalSystem, sys2: SphericalSystem,
                       fp: FiberProductData) -> TorsionWordSet:
    G = fp.group
    s1, s2 = fp.sys1, fp.sys2
    r = len(s1)
    lookup = _word_search(G, s2)
    m, inv = G.mul, G.inv
    words, rewritten, sources = [], [], []
    for i, j, a, b, h, c in torsion_index_set(G, s1, s2):
        # t is a word in the d's with phi2(t) = h^-1 c
        t = tuple(l + r if l > 0 else l - r for l in lookup(m[inv[h]][c]))
        w = (i + 1,) * a + inverse(t) + (r + j + 1,) * b + t
        words.append(w)
        rewritten.append(fp.rewriter(w))
        sources.append((i + 1, j + 1, c))
    return TorsionWordSet(tuple(words), tuple(rewritten), tuple(sources))


@dataclass(frozen=True)
class KernelProbe:
    quotient: str
    index: int
    invariants: AbelianInvariants

    @property
    def is_free(self) -> bool:
        return self.invariants.is_free


@dataclass(frozen=True)
class StructureReport:
    probes: tuple[KernelProbe, ...]
    # (index, free rank) of the first kernel with free abelianization
    best: tuple[int, int] | None
    complete: bool = True

    def free_kernels(self) -> list[KernelProbe]:
        return [p for p in self.probes if p.is_free]


@dataclass
class Pi1Report:
    presentation: Presentation
    h1: AbelianInvariants
    finite_order: int | None = None
    structure: StructureReport | None = None
    torsion_word_count: int = 0
    h_generator_words: tuple[str, ...] = ()
    finite_probe_done: bool = False

    @property
    def is_finite(self) -> bool | None:
        if self.finite_order is not None:
            return True
        return False if self.finite_probe_done else None

    def summary(self) -> str:
        if self.finite_order is not None:
            if self.finite_order == (self.h1.order or 0):
                return str(self.h1)
            return f"finite of order {self.finite_order}"
        if self.structure is not None and self.structure.best is not None:
            idx, rank = self.structure.best
            return f"infinite; Z^{rank} at index {idx}"
        return "infinite" if self.finite_probe_done else "unknown"


def pi1_presentation(fp: FiberProductData, tors: TorsionWordSet,
                     max_relator_length: int = 30, growth_limit: float = 3.0) -> Pi1Report:
    """Simplified presentation of H / <<Tors(H)>> with its H1.

    Tietze simplification runs twice; the second pass gets a fresh growth
    budget, which often removes the last few redundant generators.
    """
    H = fp.H_presentation
    Q = Presentation(H.ngens, H.relators + tors.rewritten)
    first: Simplified = simplify(Q, max_relator_length, growth_limit)
    second: Simplified = simplify(first.presentation, max_relator_length, growth_limit)
    P = second.presentation
    kept = [first.kept[g - 1] for g in second.kept]
    labels = tuple(f"x{i}" for i in range(1, P.ngens + 1))
    P = Presentation(P.ngens, P.relators, labels)
    cd_labels = fp.product_presentation.gen_labels()
    gen_words = tuple(format_word(fp.generator_words[g - 1], cd_labels) for g in kept)
    return Pi1Report(P, abelian_invariants(P), torsion_word_count=len(tors),
                     h_generator_words=gen_words)


def finite_order_probe(report: Pi1Report, coset_limit: int = DEFAULT_COSET_LIMIT) -> int | None:
    """Order of pi1 if coset enumeration over the trivial subgroup closes."""
    P = report.presentation
    if P.ngens == 0:
        order = 1
    elif not report.h1.is_finite:
        order = None  # infinite abelianization, no need to enumerate
    else:
        try:
            order = todd_coxeter(P, (), coset_limit).coset_count
        except CosetLimitExceeded:
            order = None
    report.finite_order = order
    report.finite_probe_done = True
    return order


# -- structure probe -----------------------------------------------------------

def is_quotient_of(small: AbelianInvariants, big: AbelianInvariants) -> bool:
    """Is the finite abelian group ``small`` a quotient of ``big``?

    Compare, prime by prime, the numbers of invariant factors divisible
    by each prime power (free summands count as divisible by everything).
    """
    if not small.is_finite:
        raise ValueError("expected a finite abelian group")
    primes = set()
    for d in small.torsion:
        p = 2
        n = d
        while p * p <= n:
            while n % p == 0:
                primes.add(p)
                n //= p
            p += 1
        if n > 1:
            primes.add(n)
    for p in primes:
        q = p
        while True:
            need = sum(1 for d in small.torsion if d % q == 0)
            if need == 0:
                break
            have = big.free_rank + sum(1 for d in big.torsion if d % q == 0)
            if need > have:
                return False
            q *= p
    return True


def epimorphisms(P: Presentation, Q: PermGroup, node_cap: int = EPIMORPHISM_NODE_CAP):
    """Yield generator image tuples of epimorphisms P ->> Q, one per kernel.

    Images are assigned generator by generator; a relator is checked as
    soon as all its letters have images.  Epimorphisms with the same
    kernel differ by an automorphism of Q; they are detected by comparing
    standardized coset tables.
    """
    k = P.ngens
    n = Q.order
    m, inv = Q.mul, Q.inv
    by_level: list[list[Word]] = [[] for _ in range(k)]
    for r in P.relators:
        by_level[max(abs(a) for a in r) - 1].append(r)
    seen: set[bytes] = set()
    images = [0] * k
    nodes = 0

    def holds(r: Word) -> bool:
        x = 0
        for a in r:
            g = images[abs(a) - 1]
            x = m[x][g if a > 0 else inv[g]]
        return x == 0

    def rec(level: int):
        nonlocal nodes
        if level == k:
            if len(Q.closure_indices(images)) != n:
                return
            perms = [[m[q][g] for q in range(n)] for g in images]
            act = CosetTable.from_generator_actions(perms).action
            key = _standardize(act).tobytes()
            if key in seen:
                return
            seen.add(key)
            yield tuple(images)
            return
        for g in range(n):
            nodes += 1
            if nodes > node_cap:
                raise CapExceeded(f"epimorphism search exceeded {node_cap} nodes")
            images[level] = g
            if all(holds(r) for r in by_level[level]):
                yield from rec(level + 1)
        images[level] = 0

    if k == 0:
        if n == 1:
            yield ()
        return
    yield from rec(0)


def kernel_invariants(P: Presentation, Q: PermGroup, images: Sequence[int]) -> AbelianInvariants:
    m = Q.mul
    n = Q.order
    perms = [[m[q][g] for q in range(n)] for g in images]
    table = CosetTable.from_generator_actions(perms)
    K, _ = reidemeister_schreier(P, table)
    return abelian_invariants(K)


def structure_probe(report: Pi1Report, quotient_catalog=None,
                    index_bound: int = DEFAULT_INDEX_BOUND,
                    stop_at_first: bool = True,
                    node_cap: int = EPIMORPHISM_NODE_CAP) -> StructureReport:
    """Kernels of epimorphisms onto small groups, looking for free abelianization.

    Quotients are tried by increasing order up to ``index_bound``; with
    ``stop_at_first`` the search ends after the first order at which some
    kernel has free abelianization.  ``best`` is that order together with
    the largest free rank found there.
    """
    from .catalog import builtin_catalog
    if quotient_catalog is None:
        quotient_catalog = builtin_catalog()
    P = report.presentation
    h1 = report.h1
    entries = sorted((e for e in quotient_catalog.entries if 2 <= e.order <= index_bound),
                     key=lambda e: (e.order, e.label))
    probes: list[KernelProbe] = []
    best = None
    complete = True
    for e in entries:
        if best is not None and stop_at_first and e.order > best[0]:
            break
        Q = e.group
        qab = AbelianInvariants.from_cyclic_orders(_abelian_invariants_of_group(Q))
        if not is_quotient_of(qab, h1):
            continue
        try:
            for images in epimorphisms(P, Q, node_cap):
                inv = kernel_invariants(P, Q, images)
                probes.append(KernelProbe(e.label, Q.order, inv))
                if inv.is_free:
                    if best is None or (Q.order == best[0] and inv.free_rank > best[1]):
                        best = (Q.order, inv.free_rank)
        except CapExceeded:
            complete = False
            log.warning("epimorphism search onto %s hit the node cap", e.label)
    report.structure = StructureReport(tuple(probes), best, complete)
    return report.structure


def _abelian_invariants_of_group(Q: PermGroup) -> list[int]:
    """Cyclic orders of Q^ab.

    Elements get exponent vectors along a BFS tree in the generators; each
    non-tree edge a -> a*g = b gives the relation vec(a) + e_g - vec(b).
    """
    from .fpcore.snf import smith_normal_form
    gens = Q.generator_indices
    k = len(gens)
    n = Q.order
    m = Q.mul
    vec: list[list[int] | None] = [None] * n
    vec[0] = [0] * k
    order = [0]
    rows = []
    for a in order:
        for t, g in enumerate(gens):
            b = m[a][g]
            v = list(vec[a])
            v[t] += 1
            if vec[b] is None:
                vec[b] = v
                order.append(b)
            else:
                rows.append([x - y for x, y in zip(v, vec[b])])
    rows = [r for r in rows if any(r)]
    if not rows:
        return [0] * k
    diag = smith_normal_form(rows)
    out = [d for d in diag if d != 1]
    out += [0] * (k - len(diag))
    return out


# -- convenience -------------------------------------------------------------

def compute_pi1(sys1: SphericalSystem, sys2: SphericalSystem, coset_limit: int = DEFAULT_COSET_LIMIT,
                probe_structure: bool = True, quotient_catalog=None,
                index_bound: int = DEFAULT_INDEX_BOUND) -> Pi1Report:
    fp = fiber_product(sys1, sys2)
    tors = torsion_generators(sys1, sys2, fp)
    report = pi1_presentation(fp, tors)
    finite_order_probe(report, coset_limit)
    if probe_structure and report.finite_order is None:
        structure_probe(report, quotient_catalog, index_bound)
    return report
