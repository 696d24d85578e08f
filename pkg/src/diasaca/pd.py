"""Prefix doubling suffix sorters built from DIA operations.

Every variant names suffixes by the sorted position of the first suffix that
shares their current prefix, and refines the names by pairing each suffix's
name with the name ``2**k`` positions to the right.  They differ in how the
name pairs are gathered:

* ``sorting``: sort names by ``(i mod 2**k, i div 2**k)`` so the partner is
  the next item;
* ``isa``: sort names by text position and read the partner ``2**k`` items
  ahead;
* discarding: like ``sorting`` but suffixes whose names are final drop out;
* quadrupling: radix 4, pairing with three partners at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .common import SENTINEL, Char, Trace, as_text
from .dataflow import DIA, Context, union

UNIQUE = "u"
NOT_UNIQUE = "n"
DISCARDED = "d"


@dataclass
class RunStats:
    """Counters filled in by a run; ``undecided``/``discarded`` per iteration."""

    iterations: int = 0
    undecided: list[int] = field(default_factory=list)
    discarded: list[int] = field(default_factory=list)
    carried: list[int] = field(default_factory=list)


def _setup(t, ctx, trace):
    ctx = ctx or Context.from_env()
    text = as_text(t, chars=trace is not None)
    pad = Char(SENTINEL) if trace is not None else SENTINEL
    return ctx, text, pad


def _symbols(x):
    return x[1:]


def cmp_name(j: int, a: tuple, b: tuple, key: Callable = _symbols) -> list[tuple[int, int]]:
    """Name emissions for the window ``(a, b)`` at position ``j`` of sorted S.

    ``b`` gets its position ``j + 1`` if its name tuple differs from ``a``'s,
    else 0; the very first window also emits ``(a.i, 0)``.
    """
    out = [(a[0], 0)] if j == 0 else []
    out.append((b[0], j + 1) if key(a) != key(b) else (b[0], 0))
    return out


def pair_key(d: int, n: int, partners: int = 1) -> Callable[[tuple], tuple]:
    """Sort key for ``(i, r, r_1, ..)`` where ``r_m`` names suffix ``i + m*d``.

    Names start at 0, so the 0 stored for a missing partner is ambiguous;
    the key maps it to -1, below every real name.
    """
    if partners == 1:
        return lambda x: (x[1], x[2] if x[0] + d < n else -1)
    return lambda x: (x[1],) + tuple(
        x[m + 1] if x[0] + m * d < n else -1 for m in range(1, partners + 1)
    )


def _max_name(x, y):
    return y[0], max(x[1], y[1])


def _op_key(k: int, radix: int = 2):
    d = radix ** k
    return lambda x: (x[0] % d, x[0] // d)


def refine_sorting(n_dia: DIA, k: int, trace: Trace | None = None) -> DIA:
    """Name pairs ``(i, r, r')`` where r' names suffix ``i + 2**k`` (0 if none)."""
    d = 1 << k
    n_dia = n_dia.sort(key=_op_key(k))
    if trace is not None:
        trace.record("k", k, "N", n_dia)

    def pair(j, w):
        (i, r), nxt = w
        return (i, r, nxt[1]) if nxt is not None and i + d == nxt[0] else (i, r, 0)

    return n_dia.window(2, pair)


def refine_isa(n_dia: DIA, k: int, trace: Trace | None = None) -> DIA:
    """Same pairs as :func:`refine_sorting`, read from the partial inverse SA."""
    d = 1 << k
    n = n_dia.size()
    n_dia = n_dia.sort(key=lambda x: x[0])
    if trace is not None:
        trace.record("k", k, "N", n_dia)

    def pair(j, w):
        i, r = w[0]
        return (i, r, w[d][1]) if j + d < n else (i, r, 0)

    return n_dia.window(d + 1, pair)


REFINERS: dict[str, Callable[[DIA, int, Trace | None], DIA]] = {
    "sorting": refine_sorting,
    "isa": refine_isa,
}


def _name_loop(s_dia: DIA, refine, trace, stats, radix: int = 2) -> list[int]:
    n = s_dia.size()
    key = _symbols
    k = 0
    while True:
        k += 1
        s_dia = s_dia.sort(key=key)
        n_dia = s_dia.flat_window(2, lambda j, w, _: cmp_name(j, w[0], w[1], key))
        zeros = n_dia.filter(lambda x: x[1] == 0).size()
        if trace is not None:
            trace.record("k", k, "S", s_dia)
            trace.record("k", k, "N", n_dia)
            trace.record("k", k, "zeros", zeros)
        if stats is not None:
            stats.iterations = k
        if zeros == 1:
            sa = n_dia.map(lambda x: x[0])
            if trace is not None:
                trace.record("k", k, "SA", sa)
            return sa.to_list()
        n_dia = n_dia.prefix_sum(_max_name)
        if trace is not None:
            trace.record("k", k, "N", n_dia)
        s_dia = refine(n_dia, k, trace)
        key = pair_key(radix ** k, n, radix - 1)
        if trace is not None:
            trace.record("k", k, "S", s_dia)


def pd_generic(
    t: str | bytes | Sequence[int],
    refine: str = "sorting",
    *,
    ctx: Context | None = None,
    trace: Trace | None = None,
    stats: RunStats | None = None,
) -> list[int]:
    """Suffix array by prefix doubling; ``refine`` is ``"sorting"`` or ``"isa"``."""
    try:
        refiner = REFINERS[refine]
    except KeyError:
        raise ValueError(f"unknown refinement strategy {refine!r}") from None
    ctx, text, pad = _setup(t, ctx, trace)
    if len(text) <= 1:
        return list(range(len(text)))
    s_dia = ctx.distribute(text).window(2, lambda i, w: (i, w[0], w[1]), pad=pad)
    if trace is not None:
        trace.record("k", 0, "S", s_dia)
    return _name_loop(s_dia, refiner, trace, stats)


def pd_sorting(t, **kwargs) -> list[int]:
    return pd_generic(t, "sorting", **kwargs)


def pd_isa(t, **kwargs) -> list[int]:
    return pd_generic(t, "isa", **kwargs)


def pd_quadrupling(
    t: str | bytes | Sequence[int],
    *,
    ctx: Context | None = None,
    trace: Trace | None = None,
    stats: RunStats | None = None,
) -> list[int]:
    """Prefix quadrupling: iteration k names suffixes by their first 4**k symbols."""
    ctx, text, pad = _setup(t, ctx, trace)
    if len(text) <= 1:
        return list(range(len(text)))
    s_dia = ctx.distribute(text).window(4, lambda i, w: (i, *w), pad=pad)
    if trace is not None:
        trace.record("k", 0, "S", s_dia)

    def refine(n_dia: DIA, k: int, trace: Trace | None) -> DIA:
        d = 4 ** k
        n_dia = n_dia.sort(key=_op_key(k, 4))
        if trace is not None:
            trace.record("k", k, "N", n_dia)

        def gather(j, w):
            i, r = w[0]
            return (i, r) + tuple(
                w[m][1] if w[m] is not None and w[m][0] == i + m * d else 0 for m in (1, 2, 3)
            )

        return n_dia.window(4, gather)

    return _name_loop(s_dia, refine, trace, stats, radix=4)


# -- discarding --------------------------------------------------------------


def unique_states(j: int, w: Sequence, size: int) -> list[tuple]:
    """States for items of the name-sorted N; called on padded width-3 windows.

    Window ``j`` decides item ``j + 1``; window 0 also decides item 0.  An
    item is unique iff its name differs from both neighbours.
    """
    a, b, c = w
    out = []
    if j == 0:
        out.append((a[0], a[1], UNIQUE if b is None or a[1] != b[1] else NOT_UNIQUE))
    if b is not None:
        lone = a[1] != b[1] and (c is None or b[1] != c[1])
        out.append((b[0], b[1], UNIQUE if lone else NOT_UNIQUE))
    return out


def npairs(j: int, w: Sequence, size: int, k: int) -> list[tuple]:
    """Fuse name pairs and decide discarding over padded width-3 windows.

    Window ``j`` emits item ``j`` if undecided (paired with its successor
    when that is suffix ``i + 2**k``) and item ``j + 2`` if unique.  A unique
    item is only kept when both predecessors are undecided, since only then
    may its name be needed by a later iteration.  Unique items 0 and 1 have
    no such predecessors and are discarded in window 0.
    """
    d = 1 << k
    a, b, c = w
    out = []
    if j == 0:
        if a[2] == UNIQUE:
            out.append((a[0], a[1], 0, DISCARDED))
        if b is not None and b[2] == UNIQUE:
            out.append((b[0], b[1], 0, DISCARDED))
    if a[2] == NOT_UNIQUE:
        if b is not None and a[0] + d == b[0]:
            out.append((a[0], a[1], b[1], NOT_UNIQUE))
        else:
            out.append((a[0], a[1], 0, NOT_UNIQUE))
    if c is not None and c[2] == UNIQUE:
        if a[2] == UNIQUE or b[2] == UNIQUE:
            out.append((c[0], c[1], 0, DISCARDED))
        else:
            out.append((c[0], c[1], 0, UNIQUE))
    return out


def name_discarding(j: int, a: tuple, b: tuple | None, key: Callable = _symbols) -> list[tuple]:
    """Group markers for the undecided items, sorted by name pair.

    Emits ``(i, group_mark, subgroup_mark, old_name)``; marks are 1 + the
    sorted position where the group (same old name) or subgroup (same name
    pair) starts, or 1 to inherit the running maximum.
    """
    out = [(a[0], 1, 1, a[1])] if j == 0 else []
    if b is not None:
        if a[1] != b[1]:
            out.append((b[0], j + 2, j + 2, b[1]))
        elif key(a) != key(b):
            out.append((b[0], 1, j + 2, b[1]))
        else:
            out.append((b[0], 1, 1, b[1]))
    return out


def _max_marks(x, y):
    return y[0], max(x[1], y[1]), max(x[2], y[2]), y[3]


def pd_discarding(
    t: str | bytes | Sequence[int],
    *,
    ctx: Context | None = None,
    trace: Trace | None = None,
    stats: RunStats | None = None,
) -> list[int]:
    """Prefix doubling that stops sorting suffixes whose names are final.

    Each iteration splits the live tuples into D (final, never looked at
    again), U (final, but a later pair may still need the name) and I
    (undecided).  Only U and I take part in the next sort.
    """
    ctx, text, pad = _setup(t, ctx, trace)
    if len(text) <= 1:
        return list(range(len(text)))
    s_dia = ctx.distribute(text).window(2, lambda i, w: (i, w[0], w[1]), pad=pad)
    s_dia = s_dia.sort(key=lambda x: x[1:])
    n_dia = s_dia.flat_window(2, lambda j, w, _: cmp_name(j, w[0], w[1]))
    n_dia = n_dia.prefix_sum(_max_name)
    if trace is not None:
        trace.record("k", 0, "N", n_dia)

    done = ctx.empty()
    keep = ctx.empty()
    for k in range(1, max(math.ceil(math.log2(len(text))), 0) + 2):
        p_dia = n_dia.flat_window(3, unique_states, include_partial=True)
        p_dia = union([p_dia, keep]).sort(key=_op_key(k))
        if stats is not None:
            stats.iterations = k
        p_dia = p_dia.flat_window(3, lambda j, w, l: npairs(j, w, l, k), include_partial=True)

        newly_done = p_dia.filter(lambda x: x[3] == DISCARDED)
        done = union([done, newly_done.map(lambda x: (x[0], x[1]))])
        keep = p_dia.filter(lambda x: x[3] == UNIQUE).map(lambda x: (x[0], x[1], x[3]))
        undecided = p_dia.filter(lambda x: x[3] == NOT_UNIQUE).map(lambda x: x[:3])
        if trace is not None:
            trace.record("k", k, "P", p_dia)
            trace.record("k", k, "D", done)
            trace.record("k", k, "U", keep)
            trace.record("k", k, "I", undecided)
        if stats is not None:
            stats.undecided.append(undecided.size())
            stats.discarded.append(done.size())
            stats.carried.append(keep.size())

        if undecided.size() == 0:
            sa = done.sort(key=lambda x: x[1]).map(lambda x: x[0])
            if trace is not None:
                trace.record("k", k, "SA", sa)
            return sa.to_list()

        pk = pair_key(1 << k, len(text))
        undecided = undecided.sort(key=pk)
        marks = undecided.flat_window(
            2, lambda j, w, _: name_discarding(j, w[0], w[1], pk), include_partial=True
        )
        marks = marks.prefix_sum(_max_marks)
        n_dia = marks.map(lambda x: (x[0], x[3] + (x[2] - x[1])))
        if trace is not None:
            trace.record("k", k, "N", n_dia)
    raise RuntimeError("prefix doubling with discarding did not converge")
