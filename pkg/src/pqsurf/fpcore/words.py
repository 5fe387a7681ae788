"""Words and finite presentations.

A word is a tuple of nonzero ints: ``k`` is the k-th generator (1-based)
and ``-k`` its inverse.  This is the usual letter representation; the
pair ``(generator index, exponent)`` of a letter is ``(abs(k) - 1, sign(k))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return tuple(inverse(w)) * (-k)
    return tuple(w) * k


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return free_reduce(inverse(u) + inverse(v) + tuple(u) + tuple(v))


def canonical_relator(w: Sequence[int]) -> Word:
    """Least rotation of w or w^-1: equal for relators with the same normal closure."""
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    for cand in (w, inverse(w)):
        n = len(cand)
        for i in range(n):
            rot = cand[i:] + cand[:i]
            key = tuple((abs(a), a < 0) for a in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def exponent_sums(w: Iterable[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for a in w:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


def substitute(w: Iterable[int], images: Sequence[Word]) -> Word:
    """Replace generator k by images[k-1]."""
    out: list[int] = []
    for a in w:
        out.extend(images[a - 1] if a > 0 else inverse(images[-a - 1]))
    return free_reduce(out)


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[Word, ...]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        rels = tuple(cyclic_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", tuple(r for r in rels if r))
        for r in self.relators:
            if any(a == 0 or abs(a) > self.ngens for a in r):
                raise ValueError(f"relator {r} uses unknown generator")
        if self.labels is not None:
            if len(self.labels) != self.ngens or len(set(self.labels)) != self.ngens:
                raise ValueError("labels must be unique, one per generator")

    def gen_labels(self) -> tuple[str, ...]:
        if self.labels is not None:
            return self.labels
        return tuple(f"x{i}" for i in range(1, self.ngens + 1))

    def word_str(self, w: Sequence[int]) -> str:
        return format_word(w, self.gen_labels())

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.gen_labels())]
        lines += ["rel: " + self.word_str(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Presentation:
        labels: list[str] | None = None
        rels: list[str] = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(":")
            key = key.strip()
            if key == "gens":
                labels = rest.split()
            elif key == "rel":
                rels.append(rest.strip())
            else:
                raise ValueError(f"line {lineno}: expected 'gens:' or 'rel:'")
        if labels is None:
            raise ValueError("missing 'gens:' line")
        return cls(len(labels), tuple(parse_word(r, labels) for r in rels), tuple(labels))


def format_word(w: Sequence[int], labels: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        name = labels[abs(w[i]) - 1]
        e = n if w[i] > 0 else -n
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\(|\)|\*|\^|-?\d+)")


def parse_word(text: str, labels: Sequence[str]) -> Word:
    """Parse words such as ``a^2*b^-1``, ``a b a^-1`` or ``(a*b)^3``."""
    lookup = {name: i + 1 for i, name in enumerate(labels)}
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    if text == "1":
        return ()
    it = iter(range(len(tokens)))
    i = 0

    def atom(i):
        tok = tokens[i]
        if tok == "(":
            w, i = seq(i + 1)
            if i >= len(tokens) or tokens[i] != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            i += 1
        elif tok in lookup:
            w, i = (lookup[tok],), i + 1
        elif tok == "1":
            w, i = (), i + 1
        else:
            raise ValueError(f"unknown generator {tok!r}")
        if i < len(tokens) and tokens[i] == "^":
            w = power(w, int(tokens[i + 1]))
            i += 2
        return w, i

    def seq(i):
        out: Word = ()
        while i < len(tokens) and tokens[i] != ")":
            if tokens[i] == "*":
                i += 1
                continue
            w, i = atom(i)
            out = out + w
        return out, i

    del it
    w, i = seq(0)
    if i != len(tokens):
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return free_reduce(w)
