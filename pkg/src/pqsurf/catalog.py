"""Group catalogs: file format, the builtin catalog and its completeness ledger.

The builtin catalog contains every group with explicit generators in the
classification's per-family data (stored verbatim), plus generated
families: abelian groups, dihedral and dicyclic groups, metacyclic groups
(as regular representations), symmetric and alternating groups up to
degree 7 and direct products.  Entries are pairwise non-isomorphic up to
``EXACT_DEDUP_LIMIT``; an order is certified complete only when the
number of entries reaches the known number of groups of that order.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .fpcore.snf import AbelianInvariants
from .permcore import (CLOSURE_CAP, Permutation, PermGroup, find_isomorphism,
                       fingerprint)

log = logging.getLogger(__name__)

HAND_EXCLUDED_ORDERS = frozenset({1024, 1152})
MAX_SWEEP_ORDER = 2000
EXACT_DEDUP_LIMIT = 400
METACYCLIC_LIMIT = 100
SMALL_ORDERS = range(1, 33)
# closures above this order are rebuilt on demand rather than kept
KEEP_BUILT_ORDER = 32

COMPLETE = "Complete"
BEST_EFFORT = "BestEffort"
EXCLUDED = "ExcludedByPaper"

# number of isomorphism classes of groups of order n, for the composite
# orders below 101 that are neither p^2, pq nor cyclic numbers
KNOWN_GROUP_COUNTS = {
    8: 5, 12: 5, 16: 14, 18: 5, 20: 5, 24: 15, 27: 5, 28: 4, 30: 4, 32: 51,
    36: 14, 40: 14, 42: 6, 44: 4, 45: 2, 48: 52, 50: 5, 52: 5, 54: 15,
    56: 13, 60: 13, 63: 4, 64: 267, 66: 4, 68: 5, 70: 4, 72: 50, 75: 3,
    76: 4, 78: 6, 80: 52, 81: 15, 84: 15, 88: 12, 90: 10, 92: 4, 96: 231,
    98: 5, 99: 2, 100: 16,
}


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OrderMismatch(ValueError):
    pass


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _totient(n: int) -> int:
    r = n
    for p in _factorize(n):
        r = r // p * (p - 1)
    return r


def number_of_groups(n: int) -> int | None:
    """Number of groups of order n where known to this module, else None."""
    if n == 1:
        return 1
    f = _factorize(n)
    if math.gcd(n, _totient(n)) == 1:
        return 1
    if len(f) == 1 and list(f.values())[0] == 2:
        return 2
    if len(f) == 2 and sum(f.values()) == 2:
        p, q = sorted(f)
        return 2 if q % p == 1 else 1
    return KNOWN_GROUP_COUNTS.get(n)


# -- entries ----------------------------------------------------------------

@dataclass(eq=False)
class CatalogEntry:
    """A named permutation group; the closure is computed on first use."""
    label: str
    degree: int
    generators: tuple[Permutation, ...]
    claimed_order: int | None = None
    # cheap structural metadata used to skip impossible signatures
    abelianization_order: int | None = field(default=None, repr=False)
    is_product: bool = field(default=False, repr=False)
    _group: PermGroup | None = field(default=None, repr=False)
    # closure order remembered across release()
    _order: int | None = field(default=None, repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CatalogEntry):
            return NotImplemented
        return (self.label, self.degree, self.generators, self.claimed_order) == \
            (other.label, other.degree, other.generators, other.claimed_order)

    def __hash__(self) -> int:
        return hash((self.label, self.degree, self.generators))

    @classmethod
    def from_cycles(cls, label: str, degree: int, gens: Iterable[str],
                    claimed_order: int | None = None, **kw) -> CatalogEntry:
        return cls(label, degree, tuple(Permutation.parse(g, degree) for g in gens),
                   claimed_order, **kw)

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            cap = max(CLOSURE_CAP, (self.claimed_order or 0) + 1)
            G = PermGroup(self.degree, self.generators, cap=cap, name=self.label)
            if self.claimed_order is not None and G.order != self.claimed_order:
                raise OrderMismatch(f"{self.label}: closure has order {G.order}, "
                                    f"claimed {self.claimed_order}")
            self._group = G
            self._order = G.order
        return self._group

    @property
    def order(self) -> int:
        if self.claimed_order is not None:
            return self.claimed_order
        return self._order if self._order is not None else self.group.order

    def release(self) -> None:
        """Drop the cached closure (Cayley tables of large groups are big);
        order and abelianization order are kept."""
        if self._group is not None:
            self.ab_order()
            self._group = None

    def ab_order(self) -> int:
        if self.abelianization_order is None:
            G = self.group
            self.abelianization_order = G.order // G.derived_subgroup_order
        return self.abelianization_order

    def may_admit(self, sig) -> bool:
        """Necessary condition for a spherical system: G^ab is a quotient
        of the abelianized polygonal group, so its order divides."""
        from .enumeration import polygonal_abelianization_order
        if self.order == 1:
            return False
        if self.abelianization_order is None and self._group is None:
            return True
        return polygonal_abelianization_order(tuple(sig)) % self.ab_order() == 0


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    order_complete: frozenset[int] = frozenset()
    # completeness asserted by a catalog file rather than certified here
    asserted_complete: frozenset[int] = frozenset()

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise ValueError(f"duplicate catalog labels: {dup}")

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Catalog):
            return NotImplemented
        return (self.entries == other.entries
                and self.order_complete | self.asserted_complete
                == other.order_complete | other.asserted_complete)

    def __getitem__(self, label: str) -> CatalogEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(e.label == label for e in self.entries)

    def groups_of_order(self, n: int) -> tuple[list[CatalogEntry], str]:
        return groups_of_order(self, n)

    def without(self, labels: Iterable[str]) -> Catalog:
        drop = set(labels)
        kept = [e for e in self.entries if e.label not in drop]
        orders = {e.order for e in self.entries if e.label in drop}
        return Catalog(kept, self.order_complete - orders, self.asserted_complete - orders)


def groups_of_order(catalog: Catalog, n: int) -> tuple[list[CatalogEntry], str]:
    """Entries of order n and the completeness verdict for n."""
    if n in HAND_EXCLUDED_ORDERS or n > MAX_SWEEP_ORDER:
        verdict = EXCLUDED
    elif n in catalog.order_complete or n in catalog.asserted_complete:
        verdict = COMPLETE
    else:
        verdict = BEST_EFFORT
    return [e for e in catalog.entries if e.order == n], verdict


# -- file format --------------------------------------------------------------

def parse_catalog(text: str, verify: bool = True) -> Catalog:
    """Read the line-oriented catalog format.

    Stanzas ``group <label>`` ... ``end`` carry ``degree``, optional
    ``order`` and repeatable ``gen`` lines; ``order-complete <n>`` lines
    at top level assert completeness for order n.  Blank lines and lines
    starting with ``#`` are ignored.
    """
    entries: list[CatalogEntry] = []
    complete: set[int] = set()
    cur: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if cur is None:
            if key == "group":
                if not rest:
                    raise ParseError(lineno, "group needs a label")
                cur = {"label": rest, "degree": None, "order": None, "gens": [], "line": lineno}
            elif key == "order-complete":
                complete.add(_int(rest, lineno))
            else:
                raise ParseError(lineno, f"unexpected {key!r} outside a group stanza")
            continue
        if key == "degree":
            cur["degree"] = _int(rest, lineno)
        elif key == "order":
            cur["order"] = _int(rest, lineno)
        elif key == "gen":
            if cur["degree"] is None:
                raise ParseError(lineno, "gen before degree")
            try:
                cur["gens"].append(Permutation.parse(rest, cur["degree"]))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif key == "end":
            if cur["degree"] is None:
                raise ParseError(lineno, f"group {cur['label']} has no degree")
            entry = CatalogEntry(cur["label"], cur["degree"], tuple(cur["gens"]), cur["order"])
            if verify:
                entry.group  # raises OrderMismatch
            entries.append(entry)
            cur = None
        else:
            raise ParseError(lineno, f"unknown keyword {key!r}")
    if cur is not None:
        raise ParseError(cur["line"], f"group {cur['label']} is not terminated by 'end'")
    try:
        return Catalog(entries, frozenset(), frozenset(complete))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def _int(text: str, lineno: int) -> int:
    try:
        v = int(text)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {text!r}") from None
    if v < 0:
        raise ParseError(lineno, "expected a non-negative integer")
    return v


def serialize_catalog(catalog: Catalog) -> str:
    lines = [f"order-complete {n}" for n in sorted(catalog.order_complete | catalog.asserted_complete)]
    for e in catalog.entries:
        lines.append(f"group {e.label}")
        lines.append(f"degree {e.degree}")
        if e.claimed_order is not None:
            lines.append(f"order {e.claimed_order}")
        for g in e.generators:
            lines.append(f"gen {g}")
        lines.append("end")
    return "\n".join(lines) + ("\n" if lines else "")


# -- the classification's explicit groups -------------------------------------

# generators exactly as printed with the per-family data; the abelian
# groups there are given as vectors and realized here by disjoint cycles
CLASSIFIED_GROUPS: tuple[tuple[str, int, tuple[str, ...], int], ...] = (
    ("PSL(2,7)", 7, ("(34)(56)", "(123)(457)"), 168),
    ("A6", 6, ("(123)", "(23456)"), 360),
    ("S5xZ2", 7, ("(12)", "(13)", "(14)", "(15)", "(67)"), 240),
    ("S5", 5, ("(12)", "(13)", "(14)", "(15)"), 120),
    ("A5", 5, ("(123)", "(345)"), 60),
    ("S4xZ2", 6, ("(12)", "(13)", "(14)", "(56)"), 48),
    ("S3xS3", 6, ("(12)", "(13)", "(45)", "(46)"), 36),
    ("Z2^4:Z2", 8, ("(12)(34)", "(14)(23)", "(56)(78)", "(58)(67)", "(13)(57)"), 32),
    ("S4", 4, ("(12)", "(13)", "(14)"), 24),
    ("S3xZ3", 6, ("(12)", "(13)", "(456)"), 18),
    ("Z3^2:Z2", 6, ("(123)", "(456)", "(12)(45)"), 18),
    ("Z4^2", 8, ("(1234)", "(5678)"), 16),
    ("D4xZ2", 6, ("(1234)", "(14)(23)", "(56)"), 16),
    ("Z4xZ2", 6, ("(1234)", "(56)"), 8),
    ("Z2^3", 6, ("(12)", "(34)", "(56)"), 8),
)


def classified_entries() -> list[CatalogEntry]:
    return [CatalogEntry.from_cycles(l, d, g, n) for l, d, g, n in CLASSIFIED_GROUPS]


# -- generated families ---------------------------------------------------------

def _cycle(start: int, length: int) -> list[int]:
    return list(range(start, start + length))


def _perm(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    return Permutation.from_cycles([c for c in cycles if len(c) > 1], degree)


def _partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_label(inv: AbelianInvariants) -> str:
    """Z4xZ2, Z2^3, Z4^2, Z12 ...: invariant factors, largest first."""
    if not inv.torsion:
        return "1"
    parts = []
    tors = sorted(inv.torsion, reverse=True)
    i = 0
    while i < len(tors):
        j = i
        while j < len(tors) and tors[j] == tors[i]:
            j += 1
        parts.append(f"Z{tors[i]}" if j - i == 1 else f"Z{tors[i]}^{j - i}")
        i = j
    return "x".join(parts)


def abelian_groups(n: int) -> list[tuple[AbelianInvariants, CatalogEntry]]:
    """All abelian groups of order n, one cycle per prime-power factor."""
    f = _factorize(n)
    per_prime = [[[p ** k for k in part] for part in _partitions(e)] for p, e in sorted(f.items())]
    out = []
    for choice in iproduct(*per_prime) if per_prime else [()]:
        cyclic = [q for part in choice for q in part]
        inv = AbelianInvariants.from_cyclic_orders(cyclic)
        degree = sum(cyclic) if cyclic else 1
        gens = []
        pos = 0
        for q in cyclic:
            gens.append(_perm(degree, [_cycle(pos, q)]))
            pos += q
        entry = CatalogEntry(abelian_label(inv), degree, tuple(gens), n,
                             abelianization_order=n)
        out.append((inv, entry))
    return out


def dihedral(m: int) -> CatalogEntry:
    """Symmetries of the m-gon, order 2m (m >= 3)."""
    rot = _perm(m, [_cycle(0, m)])
    refl = Permutation(tuple((-i) % m for i in range(m)))
    return CatalogEntry(f"D{m}", m, (rot, refl), 2 * m,
                        abelianization_order=4 if m % 2 == 0 else 2)


def generalized_dihedral(inv: AbelianInvariants, base: CatalogEntry) -> CatalogEntry:
    """A x| Z2 with the generator of Z2 inverting the abelian group A."""
    flip = list(range(base.degree))
    for g in base.generators:
        cyc = g.cycles()[0]
        for i, x in enumerate(cyc):
            flip[x] = cyc[-i % len(cyc)]
    ab = 2 ** (1 + sum(1 for d in inv.torsion if d % 2 == 0))
    return CatalogEntry(f"Dih({base.label})", base.degree,
                        base.generators + (Permutation(tuple(flip)),), 2 * base.order,
                        abelianization_order=ab)


def symmetric(n: int) -> CatalogEntry:
    gens = (_perm(n, [[0, 1]]), _perm(n, [_cycle(0, n)]))
    return CatalogEntry(f"S{n}", n, gens, math.factorial(n), abelianization_order=2)


def alternating(n: int) -> CatalogEntry:
    gens = tuple(_perm(n, [[0, 1, k]]) for k in range(2, n))
    return CatalogEntry(f"A{n}", n, gens, math.factorial(n) // 2,
                        abelianization_order=3 if n == 4 else 1)


def regular_representation(label: str, elements: Sequence, mul, gens: Sequence) -> CatalogEntry:
    """Right regular permutation representation of an abstractly given group."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    perms = tuple(Permutation(tuple(index[mul(e, g)] for e in elements)) for g in gens)
    return CatalogEntry(label, n, perms, n)


def metacyclic(m: int, k: int, r: int, s: int, label: str | None = None) -> CatalogEntry:
    """<a, b | a^m, b^k = a^s, b^-1 a b = a^r> (needs r^k = 1 and r s = s mod m)."""
    if pow(r, k, m) != 1 % m or (r * s - s) % m:
        raise ValueError("inconsistent metacyclic parameters")

    def mul(x, y):
        i, j = x
        i2, j2 = y
        # a^i b^j a^i2 b^j2 = a^(i + i2 r^j) b^(j + j2)
        e = i + i2 * pow(r, j, m)
        t = j + j2
        if t >= k:
            t -= k
            e += s
        return (e % m, t)

    els = [(i, j) for j in range(k) for i in range(m)]
    return regular_representation(label or f"Meta({m},{k},{r},{s})", els, mul, [(1 % m, 0), (0, 1 % k)])


def dicyclic(n: int) -> CatalogEntry:
    """Order 4n: <a, x | a^2n, x^2 = a^n, x^-1 a x = a^-1>."""
    return metacyclic(2 * n, 2, 2 * n - 1, n, label="Q8" if n == 2 else f"Dic{n}")


def metacyclic_groups(n: int) -> list[CatalogEntry]:
    out = []
    for m in range(2, n):
        if n % m:
            continue
        k = n // m
        if k < 2:
            continue
        for r in range(2, m):
            if math.gcd(r, m) != 1 or pow(r, k, m) != 1:
                continue
            for s in range(m):
                if (r * s - s) % m == 0:
                    out.append(metacyclic(m, k, r, s))
    return out


def direct_product_entry(a: CatalogEntry, b: CatalogEntry, label: str | None = None) -> CatalogEntry:
    d = a.degree + b.degree

    def shift(p: Permutation, off: int) -> Permutation:
        img = list(range(d))
        for i, j in enumerate(p.images):
            img[i + off] = j + off
        return Permutation(tuple(img))

    gens = tuple(shift(g, 0) for g in a.generators) + tuple(shift(g, a.degree) for g in b.generators)
    ab = None
    if a.abelianization_order is not None and b.abelianization_order is not None:
        ab = a.abelianization_order * b.abelianization_order
    return CatalogEntry(label or f"{a.label}x{b.label}", d, gens, a.order * b.order,
                        abelianization_order=ab, is_product=True)


def has_cyclic_direct_factor(G: PermGroup) -> bool:
    """Is G = N x Z_p for some prime p?

    That happens exactly when a central element of order p lies outside
    G' G^p, the intersection of the normal subgroups of index p.
    """
    m = G.mul
    inv = G.inv
    center = [z for z in range(G.order) if G.class_size(z) == 1]
    for p in sorted(_factorize(G.order)):
        cands = [z for z in center if G.orders[z] == p]
        if not cands:
            continue
        gens = {G.power(x, p) for x in range(G.order)}
        gens |= {m[m[inv[a]][inv[b]]][m[a][b]] for a in G.generator_indices for b in range(G.order)}
        sub = G.closure_indices(gens)
        while True:  # normal closure
            extra = {G.conj(x, g) for x in sub for g in G.generator_indices} - sub
            if not extra:
                break
            sub = G.closure_indices(sub | extra)
        if any(z not in sub for z in cands):
            return True
    return False


# -- assembling the builtin catalog -------------------------------------------------

def sweep_orders() -> list[int]:
    """Group orders met by the signature pairs for K^2 = 2, 4, 6."""
    from .enumeration import signature_pairs
    return sorted({n for k2 in (2, 4, 6) for _, _, n in signature_pairs(k2)})


class _Builder:
    """Collects entries, dropping isomorphic duplicates (first one wins)."""

    def __init__(self):
        self.entries: list[CatalogEntry] = []
        self.labels: set[str] = set()
        self.keys: set = set()
        self.by_fp: dict[tuple, list[CatalogEntry]] = {}

    def add(self, entry: CatalogEntry, key=None) -> bool:
        if entry.label in self.labels:
            return False
        if key is not None and key in self.keys:
            return False
        if entry.order <= EXACT_DEDUP_LIMIT:
            G = entry.group
            fp = fingerprint(G)
            for other in self.by_fp.get(fp, []):
                if find_isomorphism(G, other.group) is not None:
                    return False
            self.by_fp.setdefault(fp, []).append(entry)
            if entry.abelianization_order is None:
                entry.ab_order()
        if key is not None:
            self.keys.add(key)
        self.labels.add(entry.label)
        self.entries.append(entry)
        if entry.order > KEEP_BUILT_ORDER:
            entry.ab_order()
            entry.release()
        return True


def build_catalog(orders: Iterable[int] | None = None) -> Catalog:
    """The builtin catalog restricted to the given orders (default: the
    sweep orders and every order up to 64)."""
    if orders is None:
        orders = set(sweep_orders()) | set(SMALL_ORDERS)
    orders = sorted(n for n in set(orders) if n <= MAX_SWEEP_ORDER and n not in HAND_EXCLUDED_ORDERS)
    wanted = set(orders)
    b = _Builder()
    for e in classified_entries():
        if e.order in wanted:
            b.add(e)
    abelian: dict[int, list[tuple[AbelianInvariants, CatalogEntry]]] = {}
    for n in orders:
        abelian[n] = abelian_groups(n)
        for inv, e in abelian[n]:
            b.add(e, key=("ab", inv))
    for n in range(3, 8):
        for e in (symmetric(n), alternating(n)):
            if e.order in wanted:
                b.add(e)
    for n in orders:
        if n % 2 == 0 and n >= 6:
            b.add(dihedral(n // 2))
        if n % 4 == 0 and n >= 8:
            b.add(dicyclic(n // 4))
    for n in orders:
        if n % 2 == 0:
            for inv, a in abelian_groups(n // 2):
                if len(inv.torsion) > 1 and inv.torsion[-1] > 2:
                    b.add(generalized_dihedral(inv, a))
    for n in orders:
        if n <= METACYCLIC_LIMIT:
            for e in metacyclic_groups(n):
                b.add(e)
    # direct products of a small nonabelian entry with an abelian group or
    # with a second nonabelian entry
    bases = [e for e in b.entries if 6 <= e.order <= 60 and not e.is_product
             and not e.group.is_abelian() and not has_cyclic_direct_factor(e.group)]
    bases.sort(key=lambda e: (e.order, e.label))
    for n in orders:
        for x in bases:
            if n % x.order or n == x.order:
                continue
            for inv, a in abelian.get(n // x.order) or abelian_groups(n // x.order):
                b.add(direct_product_entry(x, a), key=("prod", x.label, inv))
        for i, x in enumerate(bases):
            for y in bases[i:]:
                if x.order * y.order == n:
                    b.add(direct_product_entry(x, y), key=("prod2", x.label, y.label))
    complete = set()
    for n in orders:
        count = number_of_groups(n)
        have = sum(1 for e in b.entries if e.order == n)
        if count is not None and have == count and n <= EXACT_DEDUP_LIMIT:
            complete.add(n)
    entries = sorted(b.entries, key=lambda e: (e.order, e.label))
    return Catalog(entries, frozenset(complete))


@lru_cache(maxsize=1)
def builtin_catalog() -> Catalog:
    return build_catalog()
