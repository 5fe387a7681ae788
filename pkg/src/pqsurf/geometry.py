"""Numerical invariants of the covers C_i -> P^1 and of X = (C1 x C2)/G.

Everything is exact (``fractions.Fraction``); integrality tests decide
whether a candidate survives, so no floating point is used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class ThetaZero(ZeroDivisionError):
    pass


class NonIntegralGenus(ValueError):
    pass


class BadType(ValueError):
    pass


class SingularSystem(ArithmeticError):
    pass


@dataclass(frozen=True)
class Signature:
    """Branching orders (m1 <= ... <= mr) of a cover of P^1, each m_i >= 2."""
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted(int(m) for m in parts))
        if any(m < 2 for m in parts):
            raise ValueError(f"branching orders must be >= 2: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        # shorter signatures first, then lexicographic (the order of the
        # 1-padded sequences used when listing types)
        return (len(self.parts), self.parts)

    def __lt__(self, other: Signature) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def compact(self) -> str:
        """Exponent notation used in tables: (2,2,2,4) -> '2^3,4'."""
        out = []
        i = 0
        p = self.parts
        while i < len(p):
            j = i
            while j < len(p) and p[j] == p[i]:
                j += 1
            out.append(str(p[i]) if j - i == 1 else f"{p[i]}^{j - i}")
            i = j
        return ",".join(out)

    @classmethod
    def parse(cls, text: str) -> Signature:
        text = text.strip().strip("()")
        parts = []
        for tok in text.split(","):
            tok = tok.strip()
            if "^" in tok:
                base, exp = tok.split("^")
                parts += [int(base)] * int(exp)
            elif tok:
                parts.append(int(tok))
        return cls(parts)


def _sig(sig) -> Signature:
    return sig if isinstance(sig, Signature) else Signature(sig)


def theta(sig) -> Fraction:
    """-2 + sum(1 - 1/m_i)."""
    return -2 + sum(1 - Fraction(1, m) for m in _sig(sig))


def alpha(sig, k_squared) -> Fraction:
    th = theta(sig)
    if th == 0:
        raise ThetaZero(f"theta vanishes for {sig}")
    return Fraction(k_squared) / (4 * th)


def hurwitz_genus(group_order: int, sig) -> int:
    """Genus g of the cover with 2g - 2 = |G| * theta."""
    val = group_order * theta(sig)
    if val.denominator != 1 or val.numerator % 2:
        raise NonIntegralGenus(f"|G|*theta = {val} for |G|={group_order}, {sig}")
    g = val.numerator // 2 + 1
    if g < 0:
        raise NonIntegralGenus(f"negative genus for |G|={group_order}, {sig}")
    return g


def group_order_for_pair(T1, T2, k_squared) -> Fraction:
    """8 * alpha1 * alpha2 / K^2."""
    return 8 * alpha(T1, k_squared) * alpha(T2, k_squared) / Fraction(k_squared)


def k_squared(g1: int, g2: int, group_order: int) -> Fraction:
    return Fraction(8 * (g1 - 1) * (g2 - 1), group_order)


@dataclass(frozen=True)
class CurveData:
    signature: Signature
    group_order: int
    genus: int
    theta: Fraction
    alpha: Fraction

    @classmethod
    def of(cls, sig, group_order: int, k_sq) -> CurveData:
        sig = _sig(sig)
        return cls(sig, group_order, hurwitz_genus(group_order, sig), theta(sig), alpha(sig, k_sq))


@dataclass(frozen=True)
class SurfaceInvariants:
    k_squared: Fraction
    node_count: int
    euler: Fraction
    chi: Fraction

    @property
    def chi_is_one(self) -> bool:
        return self.chi == 1


def euler_and_chi(k_sq, t: int) -> SurfaceInvariants:
    """Euler number and chi(O_S) when the only singularities are t nodes."""
    k_sq = Fraction(k_sq)
    e = k_sq / 2 + Fraction(3 * t, 2)
    return SurfaceInvariants(k_sq, t, e, (k_sq + e) / 12)


@dataclass(frozen=True)
class HJData:
    """Resolution data of a cyclic quotient singularity (1/n)(1, a)."""
    n: int
    a: int
    string: tuple[int, ...]
    discrepancies: tuple[Fraction, ...] = field(default=())
    index: int | None = None

    @property
    def length(self) -> int:
        return len(self.string)


def continued_fraction_value(string: Sequence[int]) -> Fraction:
    """b1 - 1/(b2 - 1/(... - 1/bl))."""
    val = Fraction(string[-1])
    for b in reversed(string[:-1]):
        val = b - 1 / val
    return val


def hj_string(n: int, a: int) -> HJData:
    if not (0 < a < n) or math.gcd(a, n) != 1:
        raise BadType(f"(1/{n})(1,{a}) is not a valid cyclic quotient type")
    out = []
    num, den = n, a
    while den:
        b = -(-num // den)  # ceiling
        out.append(b)
        num, den = den, b * den - num
    return HJData(n, a, tuple(out))


def _solve(A: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(A)
    M = [row[:] + [r] for row, r in zip(A, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularSystem("intersection matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def discrepancies_and_index(string: Sequence[int] | HJData) -> HJData:
    """Discrepancies a_i with K = sum a_i E_i near the string, and the index.

    Adjunction (K + E_j) E_j = -2 with E_j^2 = -b_j gives
    sum_i a_i (E_i . E_j) = b_j - 2.
    """
    if isinstance(string, HJData):
        base = string
        bs = list(string.string)
    else:
        bs = list(string)
        val = continued_fraction_value(bs)
        base = HJData(val.numerator, val.denominator, tuple(bs))
    if not bs or any(b < 2 for b in bs):
        raise BadType(f"not a Hirzebruch-Jung string: {bs}")
    l = len(bs)
    A = [[Fraction(0)] * l for _ in range(l)]
    for i, b in enumerate(bs):
        A[i][i] = Fraction(-b)
        if i + 1 < l:
            A[i][i + 1] = A[i + 1][i] = Fraction(1)
    a = _solve(A, [Fraction(b - 2) for b in bs])
    idx = math.lcm(1, *(x.denominator for x in a))
    return HJData(base.n, base.a, tuple(bs), tuple(a), idx)


def ftilde_square(node_types: Sequence[int]) -> Fraction:
    """-F~^2 for a fibre through A_{n(p)} points: sum (1 - 1/(n(p)+1))."""
    return sum((1 - Fraction(1, n + 1) for n in node_types), Fraction(0))
