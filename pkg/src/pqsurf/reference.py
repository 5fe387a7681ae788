"""Published classification data: one record per family, one row per triple.

Generators are stored as printed.  The three abelian groups are printed
as vectors; they are realized here with one disjoint cycle per factor
(Z4^2 by (1234), (5678); Z4 x Z2 by (1234), (56); Z2^3 by (12), (34), (56)).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Signature
from .permcore import Permutation, PermGroup


@dataclass(frozen=True)
class FamilyRecord:
    k_squared: int
    group: str
    degree: int
    group_generators: tuple[str, ...]
    S1: tuple[str, ...]
    S2: tuple[str, ...]
    h1: str
    # order of pi1 when finite
    pi1_order: int | None = None
    # (index, free rank) of a normal subgroup with free abelianization
    structure: tuple[int, int] | None = None

    @property
    def signatures(self) -> tuple[Signature, Signature]:
        G = self.build_group()
        return (Signature(G.orders[G.idx(p)] for p in self.perms(self.S1)),
                Signature(G.orders[G.idx(p)] for p in self.perms(self.S2)))

    def perms(self, cycles: Sequence[str]) -> list[Permutation]:
        return [Permutation.parse(c, self.degree) for c in cycles]

    def build_group(self) -> PermGroup:
        return PermGroup(self.degree, self.perms(self.group_generators), name=self.group)


def _vectors(gens: Sequence[str], degree: int, vecs: Sequence[Sequence[int]]) -> tuple[str, ...]:
    base = [Permutation.parse(g, degree) for g in gens]
    out = []
    for v in vecs:
        p = Permutation.identity(degree)
        for g, k in zip(base, v):
            p = p * g ** k
        out.append(str(p))
    return tuple(out)


_PSL = ("(34)(56)", "(123)(457)")
_S4Z2 = ("(12)", "(13)", "(14)", "(56)")
_D4Z2 = ("(1234)", "(14)(23)", "(56)")
_D4Z2b = ("(1234)", "(12)(34)", "(56)")
_A5 = ("(123)", "(345)")
_S5 = ("(12)", "(13)", "(14)", "(15)")
_A6 = ("(123)", "(23456)")
_Z44 = ("(1234)", "(5678)")
_Z42 = ("(1234)", "(56)")
_Z222 = ("(12)", "(34)", "(56)")

FAMILIES: tuple[FamilyRecord, ...] = (
    # K^2 = 2
    FamilyRecord(2, "PSL(2,7)", 7, _PSL, ("(13)(26)", "(127)(345)", "(1762354)"),
                 ("(1632)(47)", "(1524)(36)", "(1743)(25)"), "Z2^2", 4),
    FamilyRecord(2, "PSL(2,7)", 7, _PSL, ("(13)(26)", "(127)(345)", "(1762354)"),
                 ("(16)(2537)", "(1734)(26)", "(1452)(67)"), "Z2^2", 4),
    FamilyRecord(2, "S5", 5, _S5, ("(25)", "(1435)", "(12534)"),
                 ("(13)(25)", "(142)(35)", "(15)(243)"), "Z3", 3),
    FamilyRecord(2, "A5", 5, _A5, ("(14)(35)", "(15)(24)", "(13)(24)", "(154)"),
                 ("(23)(45)", "(15342)", "(13425)"), "Z5", 5),
    FamilyRecord(2, "S4xZ2", 6, _S4Z2, ("(12)(56)", "(34)", "(14)", "(1342)(56)"),
                 ("(13)(56)", "(1342)", "(124)(56)"), "Z2^2", 4),
    FamilyRecord(2, "S3xS3", 6, ("(12)", "(13)", "(45)", "(46)"),
                 ("(13)", "(46)", "(23)(56)", "(132)(465)"),
                 ("(23)(46)", "(123)(45)", "(12)(456)"), "Z3", 3),
    FamilyRecord(2, "Z4^2", 8, _Z44, _vectors(_Z44, 8, [(1, 3), (1, 0), (2, 1)]),
                 _vectors(_Z44, 8, [(3, 2), (0, 1), (1, 1)]), "Z2^3", 8),
    FamilyRecord(2, "D4xZ2", 6, _D4Z2, ("(24)", "(56)", "(12)(34)", "(1432)(56)"),
                 ("(12)(34)", "(13)(56)", "(13)(24)(56)", "(1234)"), "Z2 x Z4", 8),
    # K^2 = 4
    FamilyRecord(4, "S5", 5, _S5, ("(25)", "(1435)", "(12534)"),
                 ("(132)", "(135)(24)", "(15)(243)"), "Z3^2", None, (3, 2)),
    FamilyRecord(4, "A5", 5, _A5, ("(15)(34)", "(12)(35)", "(354)", "(125)"),
                 ("(23)(45)", "(15342)", "(13425)"), "Z15", 15),
    FamilyRecord(4, "S4xZ2", 6, _S4Z2, ("(24)", "(24)", "(1324)(56)", "(1423)(56)"),
                 ("(13)(56)", "(1342)", "(124)(56)"), "Z2^2 x Z4", None, (4, 2)),
    FamilyRecord(4, "S4xZ2", 6, _S4Z2, ("(12)(34)(56)", "(34)(56)", "(13)", "(23)", "(13)"),
                 ("(13)(56)", "(1342)", "(124)(56)"), "Z2^3", None, (2, 2)),
    FamilyRecord(4, "Z2^4:Z2", 8, ("(12)(34)", "(14)(23)", "(56)(78)", "(58)(67)", "(13)(57)"),
                 ("(24)(68)", "(12)(34)(56)(78)", "(12)(34)", "(24)(5876)"),
                 ("(12)(34)(57)(68)", "(56)(78)", "(24)(68)", "(1234)(5876)"), "Z4^2", 32),
    FamilyRecord(4, "S4", 4, ("(12)", "(13)", "(14)"), ("(13)", "(14)", "(12)(34)", "(12)", "(14)"),
                 ("(132)", "(1432)", "(1342)"), "Z2^2 x Z4", None, (4, 2)),
    FamilyRecord(4, "S3xZ3", 6, ("(12)", "(13)", "(456)"), ("(13)", "(13)", "(123)(456)", "(132)(465)"),
                 ("(132)", "(23)(465)", "(12)(456)"), "Z3^2", None, (3, 2)),
    FamilyRecord(4, "Z3^2:Z2", 6, ("(123)", "(456)", "(12)(45)"),
                 ("(23)(56)", "(23)(45)", "(123)(465)", "(132)"),
                 ("(23)(56)", "(12)(46)", "(132)(465)", "(465)"), "Z3^3", 27),
    FamilyRecord(4, "D4xZ2", 6, _D4Z2b, ("(56)", "(24)", "(12)(34)", "(12)(34)(56)", "(24)"),
                 ("(13)(56)", "(14)(23)(56)", "(13)(24)(56)", "(1234)(56)"), "Z2^2 x Z4", None, (8, 2)),
    FamilyRecord(4, "Z4xZ2", 6, _Z42, _vectors(_Z42, 6, [(2, 1), (2, 1), (3, 1), (1, 1)]),
                 _vectors(_Z42, 6, [(0, 1), (0, 1), (3, 0), (1, 0)]), "Z2^3 x Z4", None, (4, 4)),
    FamilyRecord(4, "Z2^3", 6, _Z222,
                 _vectors(_Z222, 6, [(0, 0, 1), (0, 1, 1), (0, 0, 1), (1, 1, 1), (1, 0, 0)]),
                 _vectors(_Z222, 6, [(1, 0, 0), (1, 0, 1), (0, 1, 0), (1, 1, 0), (1, 0, 1)]),
                 "Z2^3 x Z4", None, (4, 4)),
    # K^2 = 6
    FamilyRecord(6, "A6", 6, _A6, ("(16)(34)", "(25436)", "(16452)"),
                 ("(156)", "(146)(235)", "(1532)(46)"), "Z15", 60),
    FamilyRecord(6, "A6", 6, _A6, ("(16)(34)", "(25436)", "(16452)"),
                 ("(123)(456)", "(125)", "(1465)(23)"), "Z15", 60),
    FamilyRecord(6, "S5xZ2", 7, ("(12)", "(13)", "(14)", "(15)", "(67)"),
                 ("(13)(45)(67)", "(1524)(67)", "(153)(24)"),
                 ("(25)(67)", "(1432)", "(15234)(67)"), "Z2 x Z4", 120),
    FamilyRecord(6, "PSL(2,7)", 7, _PSL, ("(27)(46)", "(1235674)", "(1653742)"),
                 ("(157)(234)", "(145)(367)", "(2476)(35)"), "Z21", 84),
    FamilyRecord(6, "PSL(2,7)", 7, _PSL, ("(27)(46)", "(1235674)", "(1653742)"),
                 ("(127)(364)", "(157)(234)", "(1263)(57)"), "Z21", 84),
    FamilyRecord(6, "A5", 5, _A5, ("(13)(24)", "(123)", "(235)", "(254)"),
                 ("(23)(45)", "(15342)", "(13425)"), "Z3 x Z15", None, (15, 2)),
    FamilyRecord(6, "S4xZ2", 6, _S4Z2, ("(23)(56)", "(12)(34)(56)", "(13)(56)", "(13)(56)", "(1342)"),
                 ("(13)", "(1324)(56)", "(142)(56)"), "Z2^3 x Z4", None, (8, 4)),
    FamilyRecord(6, "D4xZ2", 6, _D4Z2b, ("(56)", "(56)", "(12)(34)(56)", "(13)(56)", "(1432)"),
                 ("(24)", "(14)(23)", "(13)(24)(56)", "(1432)(56)"), "Z2^2 x Z4^2", None, (4, 6)),
)


@dataclass(frozen=True)
class TableRow:
    k_squared: int
    T1: Signature
    T2: Signature
    g1: int
    g2: int
    group: str
    families: int
    h1: str
    pi1: str


def _row(k2, t1, t2, g1, g2, group, fams, h1, pi1) -> TableRow:
    return TableRow(k2, Signature.parse(t1), Signature.parse(t2), g1, g2, group, fams, h1, pi1)


# the table of surfaces, with T1 <= T2 in (length, lexicographic) order
TABLE: tuple[TableRow, ...] = (
    _row(2, "2,3,7", "4^3", 3, 22, "PSL(2,7)", 2, "Z2^2", "Z2^2"),
    _row(2, "2,4,5", "2,6^2", 4, 11, "S5", 1, "Z3", "Z3"),
    _row(2, "2,5^2", "2^3,3", 4, 6, "A5", 1, "Z5", "Z5"),
    _row(2, "2,4,6", "2^3,4", 3, 7, "S4xZ2", 1, "Z2^2", "Z2^2"),
    _row(2, "2,6^2", "2^3,3", 4, 4, "S3xS3", 1, "Z3", "Z3"),
    _row(2, "4^3", "4^3", 3, 3, "Z4^2", 1, "Z2^3", "Z2^3"),
    _row(2, "2^3,4", "2^3,4", 3, 3, "D4xZ2", 1, "Z2 x Z4", "Z2 x Z4"),
    _row(4, "2,4,5", "3,6^2", 4, 21, "S5", 1, "Z3^2", "Z^2 : Z3"),
    _row(4, "2,5^2", "2^2,3^2", 4, 11, "A5", 1, "Z15", "Z15"),
    _row(4, "2,4,6", "2^2,4^2", 3, 13, "S4xZ2", 1, "Z2^2 x Z4", "Z^2 : Z4"),
    _row(4, "2,4,6", "2^5", 3, 13, "S4xZ2", 1, "Z2^3", "Z^2 : Z2"),
    _row(4, "2^3,4", "2^3,4", 5, 5, "Z2^4:Z2", 1, "Z4^2", "G(32,2)"),
    _row(4, "3,4^2", "2^5", 3, 7, "S4", 1, "Z2^2 x Z4", "Z^2 : Z4"),
    _row(4, "3,6^2", "2^2,3^2", 4, 4, "S3xZ3", 1, "Z3^2", "Z^2 : Z3"),
    _row(4, "2^2,3^2", "2^2,3^2", 4, 4, "Z3^2:Z2", 1, "Z3^3", "Z3^3"),
    _row(4, "2^3,4", "2^5", 3, 5, "D4xZ2", 1, "Z2^2 x Z4", "Z^2 -> pi1 -> D4"),
    _row(4, "2^2,4^2", "2^2,4^2", 3, 3, "Z4xZ2", 1, "Z2^3 x Z4", "Z^4 -> pi1 -> Z2^2"),
    _row(4, "2^5", "2^5", 3, 3, "Z2^3", 1, "Z2^3 x Z4", "Z^4 -> pi1 -> Z2^2"),
    _row(6, "2,5^2", "3^2,4", 19, 16, "A6", 2, "Z15", "A4 x Z5"),
    _row(6, "2,4,6", "2,4,10", 11, 19, "S5xZ2", 1, "Z2 x Z4", "S3 x D(4,5,-1)"),
    _row(6, "2,7^2", "3^2,4", 19, 8, "PSL(2,7)", 2, "Z21", "A4 x Z7"),
    _row(6, "2,5^2", "2,3^3", 4, 16, "A5", 1, "Z3 x Z15", "Z^2 : Z15"),
    _row(6, "2,4,6", "2^4,4", 3, 19, "S4xZ2", 1, "Z2^3 x Z4", "Pi2 -> pi1 -> Z2 x Z4"),
    _row(6, "2^3,4", "2^4,4", 3, 7, "D4xZ2", 1, "Z2^2 x Z4^2", "Z^2 x Pi2 -> pi1 -> Z2^2"),
)

def table_row(k_squared: int, T1, T2, group: str) -> TableRow | None:
    a, b = sorted(Signature.parse(t) if isinstance(t, str) else Signature(t) for t in (T1, T2))
    for row in TABLE:
        if (row.k_squared, row.group) == (k_squared, group) and {row.T1, row.T2} == {a, b}:
            return row
    return None


# signatures satisfying the numerical conditions, with their alpha
SIGNATURE_TABLE: dict[int, tuple[tuple[str, int], ...]] = {
    2: (("2,3,7", 21), ("2,3,8", 12), ("2,3,9", 9), ("2,3,12", 6), ("2,4,5", 10),
        ("2,4,6", 6), ("2,4,8", 4), ("2,5,5", 5), ("2,6,6", 3), ("3,3,4", 6),
        ("3,3,6", 3), ("4,4,4", 2), ("2,2,2,3", 3), ("2,2,2,4", 2)),
    4: (("2,3,7", 42), ("2,3,8", 24), ("2,3,9", 18), ("2,3,10", 15), ("2,3,12", 12),
        ("2,3,18", 9), ("2,4,5", 20), ("2,4,6", 12), ("2,4,8", 8), ("2,4,12", 6),
        ("2,5,5", 10), ("2,5,10", 5), ("2,6,6", 6), ("2,8,8", 4), ("3,3,4", 12),
        ("3,3,6", 6), ("3,4,4", 6), ("3,6,6", 3), ("4,4,4", 4), ("2,2,2,3", 6),
        ("2,2,2,4", 4), ("2,2,3,3", 3), ("2,2,4,4", 2), ("2,2,2,2,2", 2)),
    6: (("2,3,7", 63), ("2,3,8", 36), ("2,3,9", 27), ("2,3,12", 18), ("2,3,15", 15),
        ("2,3,24", 12), ("2,4,5", 30), ("2,4,6", 18), ("2,4,7", 14), ("2,4,8", 12),
        ("2,4,10", 10), ("2,4,16", 8), ("2,5,5", 15), ("2,6,12", 6), ("2,7,7", 7),
        ("3,3,4", 18), ("3,3,6", 9), ("3,3,12", 6), ("3,4,6", 6), ("4,4,8", 4),
        ("2,2,2,4", 6), ("2,2,2,8", 4), ("2,3,3,3", 3), ("2,2,2,2,4", 2)),
}
