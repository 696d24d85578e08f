"""Difference cover suffix sorting (DC3 and DC7) on DIAs.

Suffixes starting at positions whose residue mod X lies in the cover D are
ranked first, recursively if their X-symbol prefixes are not all distinct.
Every suffix is then represented by its next few symbols and the ranks of
the cover suffixes among them, and the per-class arrays are merged.

Cover positions range over ``[0, n]``, i.e. they include the empty suffix at
``n`` when ``n mod X`` is in the cover.  This terminates every per-residue
block of the reduced text with a unique name, so suffixes of the reduced text
never compare across block boundaries.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from .common import SENTINEL, Char, Trace, as_text, oracle_suffix_sort
from .dataflow import DIA, Context, merge, union, zip_dias

BASE_CASE = 16


@dataclass(frozen=True)
class DifferenceCover:
    """Period X and cover D with the lookup tables used to compare suffixes."""

    period: int
    cover: tuple[int, ...]

    def differences(self) -> set[int]:
        return {(a - b) % self.period for a in self.cover for b in self.cover}

    def is_difference_cover(self) -> bool:
        return self.differences() == set(range(self.period))

    @functools.cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        """``table[j1][j2]``: symbols to compare before both suffixes hit the cover."""
        X, D = self.period, set(self.cover)
        return tuple(
            tuple(next(l for l in range(X) if (j1 + l) % X in D and (j2 + l) % X in D) for j2 in range(X))
            for j1 in range(X)
        )

    @functools.cached_property
    def rank_offsets(self) -> tuple[tuple[int, ...], ...]:
        """Offsets whose ranks a class-j representative must carry."""
        return tuple(tuple(sorted(set(row))) for row in self.table)

    @functools.cached_property
    def slots(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``slots[j1][j2] = (length, rank slot of j1)`` for comparing j1 with j2."""
        return tuple(
            tuple((l, self.rank_offsets[j1].index(l)) for l in row)
            for j1, row in enumerate(self.table)
        )

    def num_chars(self, j: int) -> int:
        return self.rank_offsets[j][-1]

    def residue_counts(self, n: int) -> list[int]:
        """Number of cover positions in ``[0, n]`` for each cover residue."""
        return [(n - d) // self.period + 1 if d <= n else 0 for d in self.cover]

    def sort_key(self, z: tuple):
        """Key ordering representatives of one class among themselves."""
        l, slot = self.slots[z[1]][z[1]]
        return z[2][:l], z[3][slot]

    def less(self, z1: tuple, z2: tuple) -> bool:
        """Suffix order between two representatives ``(i, class, chars, ranks)``."""
        l, s1 = self.slots[z1[1]][z2[1]]
        _, s2 = self.slots[z2[1]][z1[1]]
        return (z1[2][:l], z1[3][s1]) < (z2[2][:l], z2[3][s2])

    def flat(self, z: tuple) -> tuple:
        """Representative as a flat tuple: index, then symbols and ranks by offset."""
        _, j, chars, ranks = z
        offsets = self.rank_offsets[j]
        out = [z[0]]
        for l in range(offsets[-1] + 1):
            if l < len(chars):
                out.append(chars[l])
            if l in offsets:
                out.append(ranks[offsets.index(l)])
        return tuple(out)


DC3 = DifferenceCover(3, (1, 2))
DC7 = DifferenceCover(7, (0, 1, 3))


def compare_dc3(z1: tuple, z2: tuple) -> bool:
    return DC3.less(z1, z2)


def compare_dc7(z1: tuple, z2: tuple) -> bool:
    return DC7.less(z1, z2)


@dataclass
class DCStats:
    """Per recursion level: text length and whether names were all distinct."""

    sizes: list[int] = field(default_factory=list)
    distinct: list[bool] = field(default_factory=list)

    @property
    def levels(self) -> int:
        return len(self.sizes)


def _cmp_tuple(j, w, _):
    a, b = w
    out = [0] if j == 0 else []
    out.append(0 if a[1:] == b[1:] else 1)
    return out


def lexicographic_names(sorted_tuples: DIA) -> tuple[DIA, bool]:
    """Names for lexicographically sorted ``(i, c0, ..)`` tuples, and whether all differ."""
    size = sorted_tuples.size()
    if size == 0:
        return sorted_tuples, True
    if size == 1:
        names = sorted_tuples.map(lambda x: 0)
    else:
        names = sorted_tuples.flat_window(2, _cmp_tuple).prefix_sum()
    return names, names.max() + 1 == size


def build_reduced_text(names_with_index: DIA, cover: DifferenceCover) -> DIA:
    """Names of cover tuples in string order: block of residue ``cover[0]`` first."""
    X = cover.period
    return names_with_index.sort(key=lambda x: (x[0] % X, x[0] // X)).map(lambda x: x[1])


def invert_and_split(sa_r: DIA, cover: DifferenceCover, sizes: Sequence[int]) -> tuple[DIA, list[DIA]]:
    """1-based ranks of the reduced text's blocks, one DIA per cover residue.

    Returns the interleaved ``(position, rank)`` DIA as well, for tracing.
    """
    starts = [sum(sizes[:m]) for m in range(len(sizes))]
    bounds = starts + [sum(sizes)]

    def interleaved(p):
        for m in range(len(sizes) - 1, -1, -1):
            if p >= starts[m]:
                return p - starts[m]
        return p

    inv = sa_r.zip_with_index(lambda rank, p: (p, rank))
    inv = inv.sort(key=lambda x: (interleaved(x[0]), x[0]))
    parts = [
        inv.filter(lambda x, lo=bounds[m], hi=bounds[m + 1]: lo <= x[0] < hi).map(lambda x: x[1] + 1)
        for m in range(len(sizes))
    ]
    return inv, parts


def _split_distinct(i_s: DIA, cover: DifferenceCover) -> tuple[DIA, list[DIA]]:
    X = cover.period
    inv = i_s.zip_with_index(lambda rank, i: (i, rank)).sort(key=lambda x: (x[0] // X, x[0]))
    parts = [
        inv.filter(lambda x, d=d: x[0] % X == d).map(lambda x: x[1] + 1) for d in cover.cover
    ]
    return inv, parts


def _representatives(z: DIA, cover: DifferenceCover, j: int, n: int) -> DIA:
    X = cover.period
    nc = cover.num_chars(j)
    slots = [((j + l) // X, cover.cover.index((j + l) % X)) for l in cover.rank_offsets[j]]

    def make(item):
        b, cur, nxt = item
        chars = (cur[0] + nxt[0])[j:j + nc]
        blocks = (cur[1], nxt[1])
        return (X * b + j, j, chars, tuple(blocks[blk][idx] for blk, idx in slots))

    return z.map(make).filter(lambda r: r[0] < n)


def _dcx(text: Sequence[int], cover: DifferenceCover, ctx: Context, trace, stats, base_case, level, pad) -> DIA:
    X = cover.period
    n = len(text)
    if stats is not None:
        stats.sizes.append(n)
    if n == 0:
        return ctx.empty()
    tag = "level"
    t_dia = union([ctx.distribute(text), ctx.distribute([pad])])

    # Step 1: ranks of the cover suffixes.
    def make_tuples(i, w, _):
        return [(i, *w)] if i % X in cover.cover else []

    tuples = t_dia.flat_window(X, make_tuples, include_partial=True, pad=pad)
    s_dia = tuples.sort(key=lambda x: x[1:])
    i_s = s_dia.map(lambda x: x[0])
    names, distinct = lexicographic_names(s_dia)
    sizes = cover.residue_counts(n)
    if trace is not None:
        trace.record(tag, level, "T_X", tuples)
        trace.record(tag, level, "S", s_dia)
        trace.record(tag, level, "I_S", i_s)
        if s_dia.size() > 1:
            trace.record(tag, level, "N'", s_dia.flat_window(2, _cmp_tuple))
        trace.record(tag, level, "N", names)
        trace.record(tag, level, "n_sub", names.size())
    if stats is not None:
        stats.distinct.append(distinct)

    if not distinct:
        pairs = zip_dias([i_s, names], lambda i, nm: (i, nm))
        reduced = build_reduced_text(pairs, cover)
        n_sub = reduced.size()
        if n_sub >= n:
            raise RuntimeError(f"reduced text of length {n_sub} does not shrink text of length {n}")
        sub_text = tuple(reduced.map(lambda nm: nm + 1))
        if trace is not None:
            trace.record(tag, level, "T''_R", pairs)
            trace.record(tag, level, "T_R", reduced)
        if n_sub <= base_case:
            if stats is not None:
                stats.sizes.append(n_sub)
            sa_r = ctx.distribute(oracle_suffix_sort(sub_text))
        else:
            sa_r = _dcx(sub_text, cover, ctx, trace, stats, base_case, level + 1, SENTINEL)
        if trace is not None:
            trace.record(tag, level, "SA_R", sa_r)
            trace.record(tag, level, "I'_R", sa_r.zip_with_index(lambda r, p: (r, p)))
        inv, ranks = invert_and_split(sa_r, cover, sizes)
    else:
        inv, ranks = _split_distinct(i_s, cover)
    if trace is not None:
        trace.record(tag, level, "I_R", inv)
        for d, r in zip(cover.cover, ranks):
            trace.record(tag, level, f"R{d}", r)

    # Step 2: one representative per suffix.
    blocks = n // X + 1
    chunks = t_dia.flat_window(
        X, lambda i, w, _: [tuple(w)] if i % X == 0 else [], include_partial=True, pad=pad
    )
    padded = [union([r, ctx.distribute([0] * (blocks - r.size()))]) for r in ranks]
    z1 = zip_dias([chunks, *padded], lambda c, *r: (c, r))
    empty_block = ((pad,) * X, (0,) * len(cover.cover))
    z = z1.window(2, lambda b, w: (b, w[0], w[1]), pad=empty_block)

    # Step 3: sort each class up to its first rank, then merge.
    classes = []
    for j in range(X):
        reps = _representatives(z, cover, j, n)
        if trace is not None:
            trace.record(tag, level, f"S'{j}", reps.map(cover.flat))
        reps = reps.sort(key=cover.sort_key)
        if trace is not None:
            trace.record(tag, level, f"S{j}", reps.map(cover.flat))
        classes.append(reps)
    sa = merge(classes, less=cover.less).map(lambda z: z[0])
    if trace is not None:
        trace.record(tag, level, "SA", sa)
    return sa


def dcx(
    t: str | bytes | Sequence[int],
    cover: DifferenceCover,
    *,
    ctx: Context | None = None,
    trace: Trace | None = None,
    stats: DCStats | None = None,
    base_case: int = BASE_CASE,
) -> list[int]:
    """Suffix array of ``t`` with difference cover ``cover``.

    Recursive subproblems of at most ``base_case`` symbols are solved by the
    brute-force sorter; the top level always runs the full algorithm.
    """
    ctx = ctx or Context.from_env()
    text = as_text(t, chars=trace is not None)
    pad = Char(SENTINEL) if trace is not None else SENTINEL
    return _dcx(text, cover, ctx, trace, stats, base_case, 0, pad).to_list()


def dc3(t, **kwargs) -> list[int]:
    return dcx(t, DC3, **kwargs)


def dc7(t, **kwargs) -> list[int]:
    return dcx(t, DC7, **kwargs)
