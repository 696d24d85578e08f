import random

import pytest
from hypothesis import given, settings, strategies as st

from diasaca.common import Trace, naive_rank_names, oracle_suffix_sort
from diasaca.dataflow import Context
from diasaca.pd import (
    DISCARDED, NOT_UNIQUE, UNIQUE, RunStats, cmp_name, name_discarding, pd_discarding, pd_generic,
    pd_isa, pd_quadrupling, pd_sorting, refine_isa, refine_sorting, unique_states,
)

EX4 = "bdacbdacb"
EX4_SA = [6, 2, 8, 4, 0, 7, 3, 5, 1]
ALL = [pd_sorting, pd_isa, pd_discarding, pd_quadrupling]
DOUBLING = [pd_sorting, pd_isa, pd_discarding]

# Worked examples, transcribed.  Each entry is the trace line the run must produce.
INITIAL = "k=0 S=[(0,b,d), (1,d,a), (2,a,c), (3,c,b), (4,b,d), (5,d,a), (6,a,c), (7,c,b), (8,b,$)]"
NAMING = [
    "k=1 S=[(2,a,c), (6,a,c), (8,b,$), (0,b,d), (4,b,d), (3,c,b), (7,c,b), (1,d,a), (5,d,a)]",
    "k=1 N=[(2,0), (6,0), (8,2), (0,3), (4,0), (3,5), (7,0), (1,7), (5,0)]",
    "k=1 N=[(2,0), (6,0), (8,2), (0,3), (4,3), (3,5), (7,5), (1,7), (5,7)]",
    "k=2 S=[(6,0,2), (2,0,3), (8,2,0), (0,3,0), (4,3,0), (7,5,0), (3,5,7), (1,7,5), (5,7,5)]",
    "k=2 N=[(6,0), (2,1), (8,2), (0,3), (4,0), (7,5), (3,6), (1,7), (5,0)]",
    "k=2 N=[(6,0), (2,1), (8,2), (0,3), (4,3), (7,5), (3,6), (1,7), (5,7)]",
    "k=3 S=[(6,0,0), (2,1,0), (8,2,0), (4,3,2), (0,3,3), (7,5,0), (3,6,5), (5,7,0), (1,7,7)]",
    "k=3 N=[(6,0), (2,1), (8,2), (4,3), (0,4), (7,5), (3,6), (5,7), (1,8)]",
]
SORTING_REFINE = [
    "k=1 N=[(0,3), (2,0), (4,3), (6,0), (8,2), (1,7), (3,5), (5,7), (7,5)]",
    "k=1 S=[(0,3,0), (2,0,3), (4,3,0), (6,0,2), (8,2,0), (1,7,5), (3,5,7), (5,7,5), (7,5,0)]",
    "k=2 N=[(0,3), (4,3), (8,2), (1,7), (5,7), (2,1), (6,0), (3,6), (7,5)]",
    "k=2 S=[(0,3,3), (4,3,2), (8,2,0), (1,7,7), (5,7,0), (2,1,0), (6,0,0), (3,6,5), (7,5,0)]",
]
ISA_REFINE = [
    "k=1 N=[(0,3), (1,7), (2,0), (3,5), (4,3), (5,7), (6,0), (7,5), (8,2)]",
    "k=1 S=[(0,3,0), (1,7,5), (2,0,3), (3,5,7), (4,3,0), (5,7,5), (6,0,2), (7,5,0), (8,2,0)]",
    "k=2 N=[(0,3), (1,7), (2,1), (3,6), (4,3), (5,7), (6,0), (7,5), (8,2)]",
    "k=2 S=[(0,3,3), (1,7,7), (2,1,0), (3,6,5), (4,3,2), (5,7,0), (6,0,0), (7,5,0), (8,2,0)]",
]


def expected_lines(refine):
    n = NAMING
    return [INITIAL, *n[0:3], *refine[0:2], *n[3:6], *refine[2:4], *n[6:8]]


def ceil_log(n, base):
    k, p = 0, 1
    while p < n:
        k, p = k + 1, p * base
    return k


def traced(f, t):
    tr = Trace()
    sa = f(t, trace=tr)
    return sa, tr


@pytest.mark.parametrize("f", ALL)
def test_worked_example_result(f):
    assert f(EX4) == EX4_SA


@pytest.mark.parametrize("f,refine", [(pd_sorting, SORTING_REFINE), (pd_isa, ISA_REFINE)])
def test_worked_example_trace(f, refine):
    sa, tr = traced(f, EX4)
    lines = [ln for ln in tr.lines() if "zeros" not in ln and "SA=" not in ln]
    assert lines == expected_lines(refine)


def test_zero_counts_follow_listed_names():
    # counted from the listed N arrays, not from the prose next to them
    _, tr = traced(pd_sorting, EX4)
    from_listing = [NAMING[m].count(",0)") for m in (1, 4, 7)]
    assert tr.values("zeros") == from_listing == [5, 3, 1]


@pytest.mark.parametrize("f", ALL)
def test_trivial_texts(f):
    assert f("") == []
    assert f("a") == [0]
    assert f("aaaaaaa") == [6, 5, 4, 3, 2, 1, 0]
    assert f("ab" * 512) == oracle_suffix_sort("ab" * 512)


def test_unknown_refinement():
    with pytest.raises(ValueError):
        pd_generic("ab", "bogus")


def test_cmp_name():
    assert cmp_name(0, (2, "a", "c"), (6, "a", "c")) == [(2, 0), (6, 0)]
    assert cmp_name(1, (6, "a", "c"), (8, "b", "$")) == [(8, 2)]
    assert cmp_name(4, (0, 3, 3), (0, 3, 3)) == [(0, 0)]


def test_refine_examples():
    ctx = Context(num_shards=2)
    n = ctx.distribute([(2, 0), (6, 0), (8, 2), (0, 3), (4, 3), (3, 5), (7, 5), (1, 7), (5, 7)])
    assert refine_sorting(n, 1).to_list() == [
        (0, 3, 0), (2, 0, 3), (4, 3, 0), (6, 0, 2), (8, 2, 0), (1, 7, 5), (3, 5, 7), (5, 7, 5), (7, 5, 0)
    ]
    assert refine_isa(n, 1).to_list() == [
        (0, 3, 0), (1, 7, 5), (2, 0, 3), (3, 5, 7), (4, 3, 0), (5, 7, 5), (6, 0, 2), (7, 5, 0), (8, 2, 0)
    ]
    one = ctx.distribute([(0, 4)])
    assert refine_sorting(one, 3).to_list() == [(0, 4, 0)]
    assert refine_isa(one, 3).to_list() == [(0, 4, 0)]


def test_unique_states():
    names = [(2, 0), (6, 0), (8, 2), (0, 3), (4, 3)]
    wins = [tuple(names[j + m] if j + m < 5 else None for m in range(3)) for j in range(5)]
    out = [s for j, w in enumerate(wins) for s in unique_states(j, w, 5)]
    assert [s[2] for s in out] == [NOT_UNIQUE, NOT_UNIQUE, UNIQUE, NOT_UNIQUE, NOT_UNIQUE]
    assert unique_states(0, ((0, 0), None, None), 1) == [(0, 0, UNIQUE)]


def test_name_discarding():
    assert name_discarding(0, (6, 0, 2), None) == [(6, 1, 1, 0)]
    # same pair: inherit everything
    assert name_discarding(3, (1, 7, 5), (5, 7, 5)) == [(5, 1, 1, 7)]
    # same group, new pair: new subgroup
    assert name_discarding(3, (0, 3, 0), (4, 3, 2)) == [(4, 1, 5, 3)]
    # new group
    assert name_discarding(2, (2, 0, 3), (0, 3, 0)) == [(0, 4, 4, 3)]


def test_discarding_trace_partition():
    tr = Trace()
    stats = RunStats()
    assert pd_discarding(EX4, trace=tr, stats=stats) == EX4_SA
    for k in range(1, stats.iterations + 1):
        d = [x[0] for x in tr.values("D", "k", k)[0]]
        u = [x[0] for x in tr.values("U", "k", k)[0]]
        i = [x[0] for x in tr.values("I", "k", k)[0]]
        assert sorted(d + u + i) == list(range(9))
    assert stats.undecided == [8, 4, 0]
    assert stats.discarded[-1] == 9
    assert tr.values("D")[-1] == [(6, 0), (3, 6), (7, 5), (0, 4), (8, 2), (1, 8), (2, 1), (4, 3), (5, 7)]


def test_quadrupling_bound_256():
    rng = random.Random(0)
    for t in ["a" * 256, "ab" * 128, bytes(rng.randint(1, 4) for _ in range(256))]:
        stats = RunStats()
        pd_quadrupling(t, stats=stats)
        assert stats.iterations <= 4


# -- properties ----------------------------------------------------------------

texts = st.text(alphabet="abc", min_size=1, max_size=64)
small_alpha = st.text(alphabet="ab", min_size=1, max_size=64)


@settings(max_examples=60, deadline=None)
@given(st.one_of(texts, small_alpha), st.sampled_from(ALL), st.sampled_from([1, 3]))
def test_matches_oracle(t, f, p):
    assert f(t, ctx=Context(num_shards=p)) == oracle_suffix_sort(t)


@settings(max_examples=40, deadline=None)
@given(st.one_of(texts, small_alpha))
def test_names_match_naive_ranking(t):
    # names after the prefix sum of iteration k rank the 2**k-prefixes
    tr = Trace()
    pd_sorting(t, trace=tr)
    for k in range(1, 1 + len(tr.values("zeros"))):
        n_lists = tr.values("N", "k", k)
        if len(n_lists) < 2:
            continue  # final iteration: no prefix sum
        assert dict(n_lists[1]) == dict(naive_rank_names(t, 2 ** k))


@settings(max_examples=40, deadline=None)
@given(st.one_of(texts, small_alpha))
def test_names_nondecreasing_along_sorted_s(t):
    tr = Trace()
    pd_isa(t, trace=tr)
    for k in range(1, 1 + len(tr.values("zeros"))):
        named = tr.values("N", "k", k)
        if len(named) > 1:
            ranks = [r for _, r in named[1]]
            assert ranks == sorted(ranks)


@settings(max_examples=40, deadline=None)
@given(st.one_of(texts, small_alpha), st.sampled_from(DOUBLING + [pd_quadrupling]))
def test_iteration_bounds(t, f):
    stats = RunStats()
    f(t, stats=stats)
    n = len(t)
    if n == 1:
        assert stats.iterations == 0
    elif f is pd_quadrupling:
        assert stats.iterations <= ceil_log(n, 4) + 1
    else:
        assert stats.iterations <= ceil_log(n, 2)


@settings(max_examples=60, deadline=None)
@given(st.one_of(texts, small_alpha))
def test_discarding_partition_and_monotone(t):
    tr = Trace()
    stats = RunStats()
    pd_discarding(t, trace=tr, stats=stats)
    n = len(t)
    if n <= 1:
        return
    for k in range(1, stats.iterations + 1):
        d = [x[0] for x in tr.values("D", "k", k)[0]]
        u = [x[0] for x in tr.values("U", "k", k)[0]]
        i = [x[0] for x in tr.values("I", "k", k)[0]]
        assert sorted(d + u + i) == list(range(n))
    assert all(a >= b for a, b in zip(stats.undecided, stats.undecided[1:]))
    assert stats.undecided[-1] == 0 and stats.discarded[-1] == n
    # discarded tuples are never re-examined: every D only grows by appending
    ds = tr.values("D")
    assert all(later[:len(earlier)] == earlier for earlier, later in zip(ds, ds[1:]))
    assert all(x[3] in (UNIQUE, NOT_UNIQUE, DISCARDED) for p in tr.values("P") for x in p)
