"""The classification search.

Signatures are listed from the numerical conditions, candidate groups are
tested for spherical systems of both signatures, system pairs are checked
for having exactly ``8 - K^2`` nodes, and the surviving pairs are
grouped into families up to Hurwitz moves on each factor and the diagonal
action of Aut(G).
"""
from __future__ import annotations

import enum
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, Sequence

from .geometry import Signature, alpha, group_order_for_pair, hurwitz_genus, theta
from .permcore import CapExceeded, PermGroup, automorphisms, Permutation

if TYPE_CHECKING:
    from .catalog import Catalog, CatalogEntry

log = logging.getLogger(__name__)

ORBIT_CAP = 2_000_000


# -- signatures ----------------------------------------------------------

def list_of_types(k_squared: int) -> list[Signature]:
    """Signatures (m1..mr) whose alpha is a positive integer, every m_i
    divides 2*alpha and at most t/2 of them fail to divide alpha
    (t = 8 - K^2).  Lengths are at most 7 and parts at most 3(10 - t)."""
    if k_squared not in (2, 4, 6):
        raise ValueError("K^2 must be 2, 4 or 6")
    return list(_list_of_types(k_squared))


@lru_cache(maxsize=None)
def _list_of_types(k_squared: int) -> tuple[Signature, ...]:
    t = 8 - k_squared
    bound = 3 * (10 - t)
    # alpha >= 1 means theta <= K^2/4, i.e. sum(1 - 1/m_i) <= 2 + K^2/4
    cap = 2 + Fraction(k_squared, 4)
    out = []

    def rec(parts: list[int], total: Fraction):
        r = len(parts)
        if r >= 3:
            _accept(parts)
        if r == 7:
            return
        lo = parts[-1] if parts else 2
        for m in range(lo, bound + 1):
            new = total + 1 - Fraction(1, m)
            # every later part is >= m, so contributes at least 1 - 1/m
            if new > cap:
                break
            parts.append(m)
            rec(parts, new)
            parts.pop()

    def _accept(parts):
        th = theta(parts)
        if th <= 0:
            return
        a = Fraction(k_squared) / (4 * th)
        if a.denominator != 1 or a < 1:
            return
        a = a.numerator
        if any((2 * a) % m for m in parts):
            return
        if sum(1 for m in parts if a % m) > t // 2:
            return
        out.append(Signature(parts))

    rec([], Fraction(0))
    return tuple(sorted(out))


# -- spherical systems -----------------------------------------------------

@dataclass(frozen=True)
class SphericalSystem:
    """An ordered generating tuple with product 1 and prescribed orders."""
    group: PermGroup = field(repr=False, compare=False, hash=False)
    elements: tuple[int, ...]

    @property
    def signature(self) -> Signature:
        return Signature(self.group.orders[h] for h in self.elements)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.group.orders[h] for h in self.elements)

    def perms(self) -> list[Permutation]:
        return [self.group.perm(h) for h in self.elements]

    def is_valid(self) -> bool:
        G = self.group
        return G.product(self.elements) == 0 and G.generates(self.elements)

    def __str__(self) -> str:
        return ", ".join(str(p) for p in self.perms())

    @classmethod
    def from_perms(cls, G: PermGroup, perms: Sequence[Permutation | str]) -> SphericalSystem:
        els = []
        for p in perms:
            if isinstance(p, str):
                p = Permutation.parse(p, G.degree)
            els.append(G.idx(p))
        sys_ = cls(G, tuple(els))
        if not sys_.is_valid():
            raise ValueError(f"not a spherical system: {sys_}")
        return sys_


def _by_order(G: PermGroup) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for i, o in enumerate(G.orders):
        out.setdefault(o, []).append(i)
    return out


def _class_reps(G: PermGroup, elems: Sequence[int]) -> list[int]:
    seen = set()
    reps = []
    for x in elems:
        c = G.class_id[x]
        if c not in seen:
            seen.add(c)
            reps.append(x)
    return reps


@lru_cache(maxsize=None)
def polygonal_abelianization_order(sig: tuple[int, ...]) -> int:
    """Order of the abelianized polygonal group <c_i | c_i^m_i, c_1...c_r>."""
    from .fpcore.snf import smith_normal_form
    r = len(sig)
    rows = [[m if i == j else 0 for j in range(r)] for i, m in enumerate(sig)]
    rows.append([1] * r)
    d = smith_normal_form(rows)
    return math.prod(d)


def iter_spherical(G: PermGroup, sig, first_up_to_conjugacy: bool = False,
                   require_generation: bool = True) -> Iterator[tuple[int, ...]]:
    """All tuples (h1..hr) with ord(h_i) = m_i, product 1, generating G.

    The last element is forced by the product condition.  With
    ``first_up_to_conjugacy`` the first element runs over class
    representatives only.
    """
    sig = tuple(sig)
    r = len(sig)
    els = _by_order(G)
    pools = [els.get(m, []) for m in sig]
    if any(not p for p in pools):
        return
    if first_up_to_conjugacy:
        pools[0] = _class_reps(G, pools[0])
    m = G.mul
    inv = G.inv
    orders = G.orders
    last = sig[-1]
    n = G.order

    def rec(prefix: list[int], prod: int):
        k = len(prefix)
        if k == r - 1:
            h = inv[prod]
            if orders[h] != last:
                return
            tup = tuple(prefix) + (h,)
            if not require_generation or len(G.closure_indices(tup)) == n:
                yield tup
            return
        row = m[prod]
        for x in pools[k]:
            prefix.append(x)
            yield from rec(prefix, row[x])
            prefix.pop()

    if r == 1:
        if sig[0] == 1 and n == 1:
            yield (0,)
        return
    yield from rec([], 0)


def exists_spherical(G: PermGroup, sig) -> bool:
    """Does G admit a spherical system of signature ``sig``?"""
    sig = Signature(sig)
    if G.order == 1:
        return False
    if not _necessary_conditions(G, sig):
        return False
    for _ in iter_spherical(G, sig, first_up_to_conjugacy=True):
        return True
    return False


def _necessary_conditions(G: PermGroup, sig: Signature) -> bool:
    orders = set(G.orders)
    if any(m not in orders for m in sig):
        return False
    ab = G.order // G.derived_subgroup_order
    if polygonal_abelianization_order(tuple(sig)) % ab:
        return False
    return True


def all_spherical_systems(G: PermGroup, sig) -> list[tuple[int, ...]]:
    return list(iter_spherical(G, Signature(sig)))


def systems_up_to_conjugation(G: PermGroup, sig) -> list[SphericalSystem]:
    """One representative per simultaneous-conjugacy class (first found wins)."""
    seen: set[tuple[int, ...]] = set()
    reps = []
    conj_maps = _conjugation_tables(G)
    for tup in iter_spherical(G, Signature(sig), first_up_to_conjugacy=True):
        if tup in seen:
            continue
        reps.append(SphericalSystem(G, tup))
        for cm in conj_maps:
            seen.add(tuple(cm[x] for x in tup))
    return reps


@lru_cache(maxsize=64)
def _conjugation_tables_cached(G: PermGroup) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(G.conj(x, h) for x in range(G.order)) for h in range(G.order))


def _conjugation_tables(G: PermGroup):
    return _conjugation_tables_cached(G)


# -- singularities ---------------------------------------------------------

class Rejection(enum.Enum):
    NONE = "none"
    WORSE_THAN_NODE = "WorseThanNode"
    TOO_MANY_NODES = "TooManyNodes"
    TOO_FEW_NODES = "TooFewNodes"


@dataclass(frozen=True)
class SingularityReport:
    accepted: bool
    node_count: Fraction
    rejection_reason: Rejection = Rejection.NONE


def check_sings(G: PermGroup, sys1, sys2, k_squared: int, early_exit: bool = True) -> SingularityReport:
    """Count the nodes of (C1 x C2)/G from the two generating systems.

    A pair (g1 in sys1, g2 in sys2) with conjugate nontrivial powers
    g1^d1 ~ g2^d2 gives singular points; an involution contributes
    |G| / (2 d1 d2 |class|) nodes, anything of order >= 3 is worse than a
    node and rejects the pair.
    """
    s1 = sys1.elements if isinstance(sys1, SphericalSystem) else tuple(sys1)
    s2 = sys2.elements if isinstance(sys2, SphericalSystem) else tuple(sys2)
    target = 8 - k_squared
    nodes = Fraction(0)
    cid = G.class_id
    orders = G.orders
    pw1 = [[G.power(g, d) for d in range(orders[g])] for g in s1]
    pw2 = [[G.power(g, d) for d in range(orders[g])] for g in s2]
    for a, g1 in enumerate(s1):
        for b, g2 in enumerate(s2):
            for d1 in range(1, orders[g1]):
                x = pw1[a][d1]
                for d2 in range(1, orders[g2]):
                    y = pw2[b][d2]
                    if cid[x] != cid[y]:
                        continue
                    if orders[x] >= 3:
                        return SingularityReport(False, nodes, Rejection.WORSE_THAN_NODE)
                    if orders[x] == 2:
                        nodes += Fraction(G.order, 2 * d1 * d2 * G.class_size(x))
                        if early_exit and nodes > target:
                            return SingularityReport(False, nodes, Rejection.TOO_MANY_NODES)
    if nodes > target:
        return SingularityReport(False, nodes, Rejection.TOO_MANY_NODES)
    if nodes < target:
        return SingularityReport(False, nodes, Rejection.TOO_FEW_NODES)
    return SingularityReport(True, nodes)


# -- triples ---------------------------------------------------------------

@dataclass(frozen=True)
class Triple:
    k_squared: int
    T1: Signature
    T2: Signature
    entry: "CatalogEntry" = field(compare=False, hash=False)
    group_order: int

    @property
    def label(self) -> str:
        return self.entry.label

    @property
    def group(self) -> PermGroup:
        return self.entry.group

    @property
    def g1(self) -> int:
        return hurwitz_genus(self.group_order, self.T1)

    @property
    def g2(self) -> int:
        return hurwitz_genus(self.group_order, self.T2)

    @property
    def sort_key(self):
        return (self.k_squared, self.T1.sort_key, self.T2.sort_key, self.label)

    def __str__(self) -> str:
        return f"K^2={self.k_squared} ({self.T1}) x ({self.T2}) {self.label}"


@dataclass(frozen=True)
class LedgerEntry:
    k_squared: int
    T1: Signature
    T2: Signature
    order: int
    verdict: str
    note: str = ""

    def __str__(self) -> str:
        return f"K^2={self.k_squared} ({self.T1}) x ({self.T2}) |G|={self.order}: {self.verdict} {self.note}".rstrip()


def signature_pairs(k_squared: int) -> list[tuple[Signature, Signature, int]]:
    """Pairs T1 <= T2 of listed types with integral group order."""
    types = list_of_types(k_squared)
    out = []
    for i, T1 in enumerate(types):
        for T2 in types[i:]:
            n = group_order_for_pair(T1, T2, k_squared)
            if n.denominator == 1:
                out.append((T1, T2, int(n)))
    return out


def list_triples(k_squared: int, catalog: "Catalog") -> tuple[list[Triple], list[LedgerEntry]]:
    """Candidate (T1, T2, G) with G in the catalog admitting both signatures.

    The ledger records every signature pair whose order the sweep cannot
    certify: orders left to the hand arguments (1024, 1152, > 2000) and
    orders for which the catalog is not known to be complete.
    """
    triples = []
    ledger = []
    for T1, T2, n in signature_pairs(k_squared):
        entries, verdict = catalog.groups_of_order(n)
        if verdict == "ExcludedByPaper":
            ledger.append(LedgerEntry(k_squared, T1, T2, n, verdict,
                                      "left to the hand exclusion argument"))
            continue
        if verdict != "Complete":
            note = (f"{len(entries)} catalog group(s) searched" if entries
                    else "missing: no catalog group of this order")
            ledger.append(LedgerEntry(k_squared, T1, T2, n, verdict, note))
        for entry in entries:
            if _has_both(entry, T1, T2):
                triples.append(Triple(k_squared, T1, T2, entry, n))
    keep = {id(t.entry) for t in triples}
    for T1, T2, n in signature_pairs(k_squared):
        for entry in catalog.groups_of_order(n)[0]:
            if id(entry) not in keep and hasattr(entry, "release"):
                entry.release()
    triples.sort(key=lambda t: t.sort_key)
    return triples, ledger


def _has_both(entry: "CatalogEntry", T1: Signature, T2: Signature) -> bool:
    if not entry.may_admit(T1) or not entry.may_admit(T2):
        return False
    G = entry.group
    return exists_spherical(G, T1) and exists_spherical(G, T2)


def has_nodal_pair(triple: Triple) -> bool:
    G = triple.group
    reps1 = systems_up_to_conjugation(G, triple.T1)
    reps2 = systems_up_to_conjugation(G, triple.T2)
    for s1 in reps1:
        for s2 in reps2:
            if check_sings(G, s1, s2, triple.k_squared).accepted:
                return True
    return False


def existing_nodal_surfaces(k_squared: int, catalog: "Catalog",
                            triples: Sequence[Triple] | None = None) -> list[Triple]:
    if triples is None:
        triples, _ = list_triples(k_squared, catalog)
    return [t for t in triples if has_nodal_pair(t)]


# -- Hurwitz moves and families --------------------------------------------

def hurwitz_move(sys_, idx: int):
    """(.., x_i, x_{i+1}, ..) -> (.., x_{i+1}, x_{i+1}^-1 x_i x_{i+1}, ..), 1-based idx."""
    if isinstance(sys_, SphericalSystem):
        return SphericalSystem(sys_.group, hurwitz_move_tuple(sys_.group, sys_.elements, idx))
    raise TypeError("hurwitz_move expects a SphericalSystem")


def hurwitz_move_tuple(G: PermGroup, tup: Sequence[int], idx: int) -> tuple[int, ...]:
    if not 1 <= idx < len(tup):
        raise IndexError(f"Hurwitz move index {idx} out of range")
    i = idx - 1
    x, y = tup[i], tup[i + 1]
    return tuple(tup[:i]) + (y, G.conj(x, y)) + tuple(tup[i + 2:])


def inverse_hurwitz_move_tuple(G: PermGroup, tup: Sequence[int], idx: int) -> tuple[int, ...]:
    i = idx - 1
    y, z = tup[i], tup[i + 1]
    x = G.conj(z, G.inv[y])
    return tuple(tup[:i]) + (x, y) + tuple(tup[i + 2:])


def full_hurwitz_orbit(G: PermGroup, tup: Sequence[int], cap: int = ORBIT_CAP) -> set[tuple[int, ...]]:
    tup = tuple(tup)
    orbit = {tup}
    queue = deque([tup])
    r = len(tup)
    conj = G.conj
    while queue:
        t = queue.popleft()
        for i in range(r - 1):
            x, y = t[i], t[i + 1]
            u = t[:i] + (y, conj(x, y)) + t[i + 2:]
            if u not in orbit:
                orbit.add(u)
                if len(orbit) > cap:
                    raise CapExceeded(f"Hurwitz orbit exceeds {cap}")
                queue.append(u)
    return orbit


def _is_order_sorted(G: PermGroup, tup) -> bool:
    o = G.orders
    return all(o[a] <= o[b] for a, b in zip(tup, tup[1:]))


def hurwitz_orbit(sys_: SphericalSystem, cap: int = ORBIT_CAP) -> set[SphericalSystem]:
    """Braid orbit of the system, restricted to tuples with non-decreasing orders."""
    G = sys_.group
    return {SphericalSystem(G, t) for t in full_hurwitz_orbit(G, sys_.elements, cap)
            if _is_order_sorted(G, t)}


@dataclass(frozen=True)
class FamilyClass:
    triple: Triple
    representative: tuple[SphericalSystem, SphericalSystem]
    class_id: int
    report: SingularityReport = field(compare=False)


@dataclass
class ComponentData:
    """Intermediate data of the family search, reused by the test oracles."""
    systems1: list[tuple[int, ...]]
    systems2: list[tuple[int, ...]]
    orbit_of1: dict[tuple[int, ...], int]
    orbit_of2: dict[tuple[int, ...], int]
    orbit_min1: list[tuple[int, ...]]
    orbit_min2: list[tuple[int, ...]]
    aut_tables: list[tuple[int, ...]]
    classes: list[tuple[tuple[int, ...], tuple[int, ...]]]


def _braid_partition(G: PermGroup, systems: list[tuple[int, ...]], cap: int):
    orbit_of: dict[tuple[int, ...], int] = {}
    mins: list[tuple[int, ...]] = []
    for s in systems:
        if s in orbit_of:
            continue
        oid = len(mins)
        members = [t for t in full_hurwitz_orbit(G, s, cap) if _is_order_sorted(G, t)]
        for t in members:
            orbit_of[t] = oid
        mins.append(min(members))
    return orbit_of, mins


def component_data(triple: Triple, cap: int = ORBIT_CAP) -> ComponentData:
    G = triple.group
    sys1 = all_spherical_systems(G, triple.T1)
    sys2 = all_spherical_systems(G, triple.T2)
    orb1, min1 = _braid_partition(G, sys1, cap)
    orb2, min2 = _braid_partition(G, sys2, cap)
    auts = [a.image_table for a in automorphisms(G, cap=max(G.order, 400))]

    def act(a, tup):
        return tuple(a[x] for x in tup)

    # Aut(G) permutes braid orbits; record the permutation per automorphism
    perm1 = [[orb1[act(a, m)] for m in min1] for a in auts]
    perm2 = [[orb2[act(a, m)] for m in min2] for a in auts]
    seen = set()
    classes = []
    for A in range(len(min1)):
        for B in range(len(min2)):
            if (A, B) in seen:
                continue
            best = None
            for k in range(len(auts)):
                A2, B2 = perm1[k][A], perm2[k][B]
                seen.add((A2, B2))
                cand = (min1[A2], min2[B2])
                if best is None or cand < best:
                    best = cand
            classes.append(best)
    classes.sort()
    return ComponentData(sys1, sys2, orb1, orb2, min1, min2, auts, classes)


def find_all_components(triple: Triple, cap: int = ORBIT_CAP,
                        data: ComponentData | None = None) -> list[FamilyClass]:
    """One representative per family of the triple, in canonical order."""
    if data is None:
        data = component_data(triple, cap)
    G = triple.group
    out = []
    for rep1, rep2 in data.classes:
        rep = check_sings(G, rep1, rep2, triple.k_squared)
        if rep.accepted:
            out.append(FamilyClass(triple, (SphericalSystem(G, rep1), SphericalSystem(G, rep2)),
                                   len(out), rep))
    return out


def class_count_with_swap(triple: Triple, data: ComponentData | None = None) -> int:
    """Family count when, for T1 = T2, the two factors may also be exchanged."""
    fams = find_all_components(triple, data=data)
    if triple.T1 != triple.T2:
        return len(fams)
    data = data or component_data(triple)
    G = triple.group
    keys = set()
    for f in fams:
        a, b = f.representative
        k1 = family_key(G, data, a.elements, b.elements)
        k2 = family_key(G, data, b.elements, a.elements)
        keys.add(min(k1, k2))
    return len(keys)


def _orbit_id(G: PermGroup, orbit_of: dict, tup) -> int:
    """Braid orbit id of any arrangement, found by walking Hurwitz moves
    until a recorded (order-sorted) member is reached."""
    tup = tuple(tup)
    if tup in orbit_of:
        return orbit_of[tup]
    seen = {tup}
    queue = deque([tup])
    while queue:
        t = queue.popleft()
        for i in range(1, len(t)):
            u = hurwitz_move_tuple(G, t, i)
            if u in orbit_of:
                return orbit_of[u]
            if u not in seen:
                seen.add(u)
                queue.append(u)
    raise KeyError(f"no recorded braid orbit for {tup}")


def family_key(G: PermGroup, data: ComponentData, s1, s2):
    """Canonical class representative of the pair (s1, s2); s1 and s2 may
    be in any arrangement reachable by Hurwitz moves."""
    A = _orbit_id(G, data.orbit_of1, s1)
    B = _orbit_id(G, data.orbit_of2, s2)
    best = None
    for a in data.aut_tables:
        m1 = data.orbit_min1[data.orbit_of1[tuple(a[x] for x in data.orbit_min1[A])]]
        m2 = data.orbit_min2[data.orbit_of2[tuple(a[x] for x in data.orbit_min2[B])]]
        if best is None or (m1, m2) < best:
            best = (m1, m2)
    return best
