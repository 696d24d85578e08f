"""Text handling, the brute-force oracle, the suffix array checker and tracing.

Texts are tuples of positive integers.  ``0`` is reserved for the sentinel
``$`` that conceptually terminates every text and pads windows past the end,
so sentinel comparisons are ordinary integer comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

SENTINEL = 0


class Char(int):
    """A text symbol that renders as its character (``$`` for the sentinel)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "$" if self == 0 else chr(self)

    __str__ = __repr__


def as_text(t: str | bytes | Sequence[int], *, chars: bool = False) -> tuple[int, ...]:
    """Normalise ``t`` into a tuple of symbols, rejecting the sentinel value.

    Strings are encoded as latin-1.  With ``chars=True`` symbols are wrapped
    in :class:`Char` so traces print them as letters.
    """
    if isinstance(t, str):
        t = t.encode("latin-1")
    symbols = tuple(t)
    for pos, c in enumerate(symbols):
        if c <= SENTINEL:
            raise ValueError(f"symbol {c} at position {pos} collides with the sentinel (0)")
    if chars:
        return tuple(Char(c) for c in symbols)
    return symbols


def oracle_suffix_sort(t: str | bytes | Sequence[int]) -> list[int]:
    """Suffix array by direct suffix comparison."""
    s = as_text(t) if isinstance(t, str) else tuple(t)
    return sorted(range(len(s)), key=lambda i: s[i:])


def inverse(sa: Sequence[int]) -> list[int]:
    isa = [0] * len(sa)
    for rank, i in enumerate(sa):
        isa[i] = rank
    return isa


@dataclass(frozen=True)
class Violation:
    """First place where a candidate suffix array is wrong."""

    position: int
    clause: str

    def __str__(self) -> str:
        return f"violation at i={self.position}: {self.clause}"


def check_suffix_array(t: str | bytes | Sequence[int], sa: Sequence[int]) -> Violation | None:
    """Return ``None`` if ``sa`` is the suffix array of ``t``, else the first violation.

    Linear time: after the permutation check, each adjacent pair ``(a, b)``
    must satisfy ``t[a] < t[b]``, or ``t[a] == t[b]`` and the suffix after
    ``a`` ranks before the suffix after ``b``.  The empty suffix ranks lowest.
    """
    s = as_text(t) if isinstance(t, str) else tuple(t)
    n = len(s)
    if len(sa) != n:
        return Violation(0, f"length {len(sa)} != text length {n}")
    rank = [-1] * (n + 1)
    for pos, i in enumerate(sa):
        if not (0 <= i < n) or rank[i] != -1:
            return Violation(pos, f"not a permutation: entry {i}")
        rank[i] = pos
    for pos in range(n - 1):
        a, b = sa[pos], sa[pos + 1]
        if s[a] > s[b]:
            return Violation(pos, f"first characters out of order: t[{a}] > t[{b}]")
        if s[a] == s[b] and rank[a + 1] > rank[b + 1]:
            return Violation(pos, f"t[{a}] == t[{b}] but suffix {a + 1} ranks after suffix {b + 1}")
    return None


def naive_rank_names(t: str | bytes | Sequence[int], depth: int) -> list[tuple[int, int]]:
    """(index, name) pairs for suffixes sorted by their first ``depth`` symbols.

    A name is the position in this order of the first suffix sharing the
    prefix, i.e. the number of suffixes with a strictly smaller prefix.
    Ties are listed by index.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    s = as_text(t) if isinstance(t, str) else tuple(t)
    order = sorted(range(len(s)), key=lambda i: (s[i:i + depth], i))
    out = []
    prev = None
    name = 0
    for pos, i in enumerate(order):
        prefix = s[i:i + depth]
        if prefix != prev:
            name = pos
            prev = prefix
        out.append((i, name))
    return out


def render(value) -> str:
    """Bracketed tuple notation: ``[(2,a,c), (6,a,c)]``."""
    if isinstance(value, (list, tuple)) and not isinstance(value, Char):
        if isinstance(value, tuple):
            return "(" + ",".join(render(v) for v in value) + ")"
        return "[" + ", ".join(render(v) for v in value) + "]"
    return str(value)


@dataclass
class Trace:
    """Collects labelled snapshots of intermediate arrays.

    ``scope`` is the outer label (``k`` for doubling iterations, ``level``
    for recursion depth); each entry renders as ``<scope>=<n> <label>=<value>``.
    """

    entries: list[tuple[str, int, str, object]] = field(default_factory=list)

    def record(self, scope: str, step: int, label: str, value) -> None:
        if hasattr(value, "to_list"):
            value = value.to_list()
        self.entries.append((scope, step, label, value))

    def values(self, label: str, scope: str | None = None, step: int | None = None) -> list:
        return [
            v for sc, st, lb, v in self.entries
            if lb == label and (scope is None or sc == scope) and (step is None or st == step)
        ]

    def lines(self) -> list[str]:
        return [f"{sc}={st} {lb}={render(v)}" for sc, st, lb, v in self.entries]

    def write(self, fh: TextIO) -> None:
        for line in self.lines():
            fh.write(line + "\n")


def iter_texts(alphabet: str, max_len: int) -> Iterable[str]:
    """All strings over ``alphabet`` of length 0..max_len, shortest first."""
    import itertools

    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield "".join(combo)
