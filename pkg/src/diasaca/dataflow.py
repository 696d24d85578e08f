"""Single-process, sharded execution engine for distributed immutable arrays.

A :class:`DIA` is an ordered sequence of items split into shards, one per
simulated worker.  The logical array is the concatenation of the shards in
shard order, and every operation yields the same logical result whatever the
shard count is.  Operations never mutate their inputs.

Comparisons follow Python conventions: ``sort``, ``merge`` and ``max`` take a
``key`` function, or a ``less(a, b) -> bool`` predicate for comparators that
cannot be expressed as a key.
"""
from __future__ import annotations

import functools
import heapq
import itertools
import os
from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Callable, Generic, Iterable, Iterator, TypeVar

A = TypeVar("A")
B = TypeVar("B")

SHARDS_ENV = "DIASACA_SHARDS"

# Windows up to this width are materialised as tuples; wider ones are views.
_TUPLE_WINDOW_MAX = 8


class UnsortedInputError(ValueError):
    """A merge input violated its sortedness precondition (debug mode only)."""


def default_shards() -> int:
    value = os.environ.get(SHARDS_ENV, "1")
    try:
        shards = int(value)
    except ValueError:
        raise ValueError(f"{SHARDS_ENV} must be a positive integer, got {value!r}") from None
    if shards < 1:
        raise ValueError(f"{SHARDS_ENV} must be a positive integer, got {value!r}")
    return shards


@dataclass(frozen=True)
class Context:
    """Execution context: number of simulated workers and debug checks."""

    num_shards: int = 1
    debug: bool = False

    def __post_init__(self):
        if self.num_shards < 1:
            raise ValueError(f"num_shards must be >= 1, got {self.num_shards}")

    @classmethod
    def from_env(cls, debug: bool = False) -> "Context":
        return cls(num_shards=default_shards(), debug=debug)

    def distribute(self, items: Iterable[A]) -> "DIA[A]":
        """Create a DIA from local data, split into equally sized shards."""
        return DIA(self, _split_even(list(items), self.num_shards))

    def empty(self) -> "DIA[Any]":
        return self.distribute(())


def _split_even(items: list, parts: int) -> tuple[tuple, ...]:
    n = len(items)
    bounds = [n * p // parts for p in range(parts + 1)]
    return tuple(tuple(items[bounds[p]:bounds[p + 1]]) for p in range(parts))


def _key_of(key: Callable | None, less: Callable | None) -> Callable | None:
    if key is not None and less is not None:
        raise TypeError("pass either key or less, not both")
    if less is not None:
        return functools.cmp_to_key(lambda a, b: -1 if less(a, b) else (1 if less(b, a) else 0))
    return key


class WindowView(Sequence):
    """Read-only view of ``width`` consecutive items, padded past the end."""

    __slots__ = ("_buf", "_start", "_width", "_pad")

    def __init__(self, buf: Sequence, start: int, width: int, pad: Any):
        self._buf = buf
        self._start = start
        self._width = width
        self._pad = pad

    def __len__(self) -> int:
        return self._width

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return [self[i] for i in range(*idx.indices(self._width))]
        if idx < 0:
            idx += self._width
        if not 0 <= idx < self._width:
            raise IndexError("window index out of range")
        pos = self._start + idx
        return self._buf[pos] if pos < len(self._buf) else self._pad


def _window_at(buf: list, j: int, width: int, pad: Any):
    if width <= _TUPLE_WINDOW_MAX:
        win = tuple(buf[j:j + width])
        if len(win) < width:
            win += (pad,) * (width - len(win))
        return win
    return WindowView(buf, j, width, pad)


class DIA(Generic[A]):
    """Distributed immutable array simulated as a tuple of shards."""

    __slots__ = ("ctx", "shards")

    def __init__(self, ctx: Context, shards: Iterable[Iterable[A]]):
        self.ctx = ctx
        self.shards: tuple[tuple[A, ...], ...] = tuple(tuple(s) for s in shards)

    # -- helpers -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"DIA(size={self.size()}, shards={[len(s) for s in self.shards]})"

    def __iter__(self) -> Iterator[A]:
        return itertools.chain.from_iterable(self.shards)

    def to_list(self) -> list[A]:
        """Gather all items to the caller."""
        return list(self)

    def _offsets(self) -> list[int]:
        offsets = [0]
        for shard in self.shards:
            offsets.append(offsets[-1] + len(shard))
        return offsets

    def _new(self, shards) -> "DIA":
        return DIA(self.ctx, shards)

    def _rebalance(self, items: list) -> "DIA":
        return self._new(_split_even(items, self.ctx.num_shards))

    # -- local operations ----------------------------------------------------

    def map(self, f: Callable[[A], B]) -> "DIA[B]":
        return self._new([f(x) for x in shard] for shard in self.shards)

    def filter(self, p: Callable[[A], bool]) -> "DIA[A]":
        return self._new([x for x in shard if p(x)] for shard in self.shards)

    def zip_with_index(self, f: Callable[[int, A], B]) -> "DIA[B]":
        offsets = self._offsets()
        return self._new(
            [f(base + j, x) for j, x in enumerate(shard)]
            for base, shard in zip(offsets, self.shards)
        )

    # -- window scans ----------------------------------------------------------

    def window(self, k: int, w: Callable[[int, Sequence[A]], B], pad: Any = None) -> "DIA[B]":
        """Apply ``w(j, items[j:j+k])`` for every j; short tail windows get ``pad``.

        The output has exactly ``size()`` items.  Each shard reads the first
        ``k - 1`` items of its successors, as a worker would over the network.
        """
        if k < 1:
            raise ValueError(f"window width must be >= 1, got {k}")
        buf = self.to_list()
        offsets = self._offsets()
        return self._new(
            [w(j, _window_at(buf, j, k, pad)) for j in range(offsets[p], offsets[p + 1])]
            for p in range(len(self.shards))
        )

    def flat_window(
        self,
        k: int,
        w: Callable[[int, Sequence[A], int], Iterable[B]],
        include_partial: bool = False,
        pad: Any = None,
    ) -> "DIA[B]":
        """Concatenate the emissions of ``w(j, items[j:j+k], size)``.

        ``w`` is called for every full window ``j <= size - k``, and also for
        the padded tail windows when ``include_partial`` is set.
        """
        if k < 1:
            raise ValueError(f"window width must be >= 1, got {k}")
        buf = self.to_list()
        n = len(buf)
        last = n if include_partial else max(n - k + 1, 0)
        offsets = self._offsets()
        out = []
        for p in range(len(self.shards)):
            emitted: list = []
            for j in range(offsets[p], min(offsets[p + 1], last)):
                emitted.extend(w(j, _window_at(buf, j, k, pad), n))
            out.append(emitted)
        return self._new(out)

    # -- global operations -----------------------------------------------------

    def prefix_sum(self, s: Callable[[A, A], A] | None = None) -> "DIA[A]":
        """Inclusive scan with an associative operator (default ``+``).

        Each shard scans locally, then the shard totals are combined in
        shard order and folded into the following shards.
        """
        if s is None:
            s = _add
        local = []
        for shard in self.shards:
            local.append(list(itertools.accumulate(shard, s)) if shard else [])
        out = []
        carry = None
        for part in local:
            if carry is None:
                out.append(part)
            else:
                out.append([s(carry, x) for x in part])
            if part:
                carry = part[-1] if carry is None else s(carry, part[-1])
        return self._new(out)

    def sort(self, key: Callable | None = None, less: Callable | None = None) -> "DIA[A]":
        """Stable sample sort: ties keep their original logical order.

        Without ``key``/``less`` items are compared component-wise.
        """
        keyf = _key_of(key, less)
        num = self.ctx.num_shards
        offsets = self._offsets()

        def decorate(p: int, shard: tuple) -> list:
            base = offsets[p]
            if keyf is None:
                run = [(x, base + j, x) for j, x in enumerate(shard)]
            else:
                run = [(keyf(x), base + j, x) for j, x in enumerate(shard)]
            run.sort(key=_first_two)
            return run

        runs = [decorate(p, shard) for p, shard in enumerate(self.shards)]
        if num == 1:
            merged = runs[0] if len(runs) == 1 else list(heapq.merge(*runs, key=_first_two))
            return self._new([[x for _, _, x in merged]])

        # Regular sampling: every run contributes num - 1 evenly spaced samples.
        samples = []
        for run in runs:
            if run:
                samples.extend(run[len(run) * q // num] for q in range(1, num))
        samples.sort(key=_first_two)
        splitters = [
            _first_two(samples[len(samples) * q // num]) for q in range(1, num)
        ] if samples else []

        buckets: list[list[list]] = [[] for _ in range(num)]
        for run in runs:
            keys = [_first_two(d) for d in run]
            cuts = [0] + [bisect_right(keys, sp) for sp in splitters] + [len(run)]
            cuts += [len(run)] * (num + 1 - len(cuts))
            for b in range(num):
                buckets[b].append(run[cuts[b]:cuts[b + 1]])
        return self._new(
            [x for _, _, x in heapq.merge(*parts, key=_first_two)] for parts in buckets
        )

    def size(self) -> int:
        return sum(len(s) for s in self.shards)

    def max(self, key: Callable | None = None, less: Callable | None = None) -> A:
        keyf = _key_of(key, less)
        partial = [max(s, key=keyf) if keyf else max(s) for s in self.shards if s]
        if not partial:
            raise ValueError("max() of an empty DIA")
        return max(partial, key=keyf) if keyf else max(partial)


def _add(a, b):
    return a + b


def _first_two(d):
    return d[0], d[1]


def union(inputs: Sequence[DIA[A]]) -> DIA[A]:
    """Concatenate the inputs in argument order."""
    if not inputs:
        raise ValueError("union() needs at least one DIA to take the context from")
    ctx = inputs[0].ctx
    items = list(itertools.chain.from_iterable(d.to_list() for d in inputs))
    return DIA(ctx, _split_even(items, ctx.num_shards))


def zip_dias(inputs: Sequence[DIA], f: Callable[..., B]) -> DIA[B]:
    """``out[i] = f(inputs[0][i], inputs[1][i], ...)``; all sizes must agree."""
    if not inputs:
        raise ValueError("zip needs at least one DIA")
    sizes = [d.size() for d in inputs]
    if len(set(sizes)) > 1:
        raise ValueError(f"zip inputs differ in size: {sizes}")
    first = inputs[0]
    offsets = first._offsets()
    columns = [d.to_list() for d in inputs]
    rows = list(zip(*columns))
    return DIA(
        first.ctx,
        ([f(*row) for row in rows[offsets[p]:offsets[p + 1]]] for p in range(len(first.shards))),
    )


def merge(inputs: Sequence[DIA[A]], key: Callable | None = None, less: Callable | None = None) -> DIA[A]:
    """Merge sorted DIAs; equal items are taken in input order."""
    if not inputs:
        raise ValueError("merge needs at least one DIA")
    ctx = inputs[0].ctx
    keyf = _key_of(key, less)
    lists = [d.to_list() for d in inputs]
    if ctx.debug:
        for idx, items in enumerate(lists):
            keys = items if keyf is None else [keyf(x) for x in items]
            for pos in range(1, len(keys)):
                if keys[pos] < keys[pos - 1]:
                    raise UnsortedInputError(f"merge input {idx} is unsorted at position {pos}")
    if keyf is None:
        merged = list(heapq.merge(*lists))
    else:
        merged = list(heapq.merge(*lists, key=keyf))
    return DIA(ctx, _split_even(merged, ctx.num_shards))
