from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import WORKED_AT_MOST, WORKED_C1, make_text, random_ranks
from oracles import window_pairs
from onemap.average import (
    BudgetExceeded,
    block_events,
    enumerate_windows,
    extend_pair,
    lcp_groups,
    meets_average_condition,
    plan_blocks,
    run_average,
    t_value,
)
from onemap.core import brute_force
from onemap.suffix_index import build_dual, build_index
from onemap.text import from_string, hamming


def test_plan_blocks():
    p = plan_blocks(10, 3)
    assert (p.L, p.count) == (1, 10)
    assert p.starts.tolist() == list(range(10))
    p = plan_blocks(10, 9)
    assert p.L == 3
    assert p.starts.tolist() == [0, 3, 6]
    assert p.count == 3
    with pytest.raises(ValueError, match="m >= 3"):
        plan_blocks(10, 2)


def naive_groups(x, L):
    idx = build_index(x)
    n = len(x)
    groups, run = [], [0]
    for r in range(1, n + 1):
        if r < n and idx.lcp[r] >= L:
            run.append(r)
            continue
        pos = {int(idx.sa[q]) for q in run}
        if len(pos) > 1 and any(p % L == 0 and p + L <= n for p in pos):
            groups.append(pos)
        run = [r]
    return groups


def test_lcp_groups_worked(worked):
    groups = [set(g.tolist()) for g in lcp_groups(build_index(worked), 3)]
    assert {0, 4} in groups
    assert groups == naive_groups(worked, 3)


def test_lcp_groups_unary():
    groups = [set(g.tolist()) for g in lcp_groups(build_index(from_string("aaaa")), 2)]
    assert groups == [{0, 1, 2}]


def test_lcp_groups_all_distinct():
    assert list(lcp_groups(build_index(from_string("abcdefg")), 1)) == []


def test_extend_pair_worked(worked):
    e = extend_pair(build_dual(worked), 0, 4, 3, 1)
    assert e.a == 0 and e.l1 == -1
    assert e.c == 2
    assert e.r1 == 3


def test_extend_at_text_start_is_sentinel(rng):
    x = random_ranks(rng, 80, 2)
    d = build_dual(x)
    for j in range(1, 80):
        if x[j] == x[0]:
            assert extend_pair(d, 0, j, 3, 1).l1 == -1


def test_identical_windows_emit_nothing():
    d = build_dual(from_string("abcabc"))
    e = extend_pair(d, 0, 3, 3, 1)
    assert enumerate_windows(e, 3, 1, 6) == []


def test_t_value_examples():
    # aligned windows, m=9, L=3, mismatch in the middle block: two blocks each
    assert t_value(0, 9, 4, 13, 9, 3) == 4
    # aab@0 vs aaa@3 in the worked example, mismatch at window offset 2
    assert t_value(0, 3, 2, 5, 3, 1) == 4


def test_worked_pair_is_emitted(worked):
    d = build_dual(worked)
    found = set()
    for group in lcp_groups(d.fwd, 1):
        for i in group:
            if i % 1:
                continue
            for j in group:
                if j != i:
                    for p, pp, _ in enumerate_windows(extend_pair(d, int(i), int(j), 3, 1), 3, 1, 10):
                        found.add(tuple(sorted((p, pp))))
    assert (0, 3) in found
    assert found == set(window_pairs("aabaaabbbb", 3))


def discovery_audit(xs, m):
    """Every emitted pair is at distance 1 and is emitted exactly ``t`` times."""
    n = len(xs)
    L = m // 3
    d = build_dual(np.array(xs, dtype=np.int32))
    events = Counter()
    tvals = {}
    for group in lcp_groups(d.fwd, L):
        for i in group:
            i = int(i)
            if i % L or i + L > n:
                continue
            for j in group:
                j = int(j)
                if j == i:
                    continue
                e = extend_pair(d, i, j, m, L)
                for p, pp, mu in enumerate_windows(e, m, L, n):
                    assert hamming(xs[p:p + m], xs[pp:pp + m]) == 1
                    assert xs[mu] != xs[mu - p + pp]
                    key = tuple(sorted((p, pp)))
                    events[key] += 1
                    t = t_value(p, pp, mu, mu - p + pp, m, L)
                    assert tvals.setdefault(key, t) == t
    assert set(events) == set(window_pairs(xs, m))
    for key, count in events.items():
        assert count == tvals[key]


@given(st.lists(st.integers(0, 1), min_size=3, max_size=40), st.data())
def test_discovery_counts_binary(xs, data):
    m = data.draw(st.integers(3, len(xs)))
    discovery_audit(xs, m)


@given(st.lists(st.integers(0, 3), min_size=3, max_size=50), st.data())
def test_discovery_counts_dna(xs, data):
    m = data.draw(st.integers(3, min(len(xs), 12)))
    discovery_audit(xs, m)


def test_run_average_worked(worked):
    r = run_average(worked, 3)
    assert r.c1.tolist() == WORKED_C1
    assert r.at_most.tolist() == WORKED_AT_MOST


def test_run_average_unary():
    assert run_average(from_string("aaaa"), 3).c1.tolist() == [0, 0]


def test_run_average_random_binary(rng):
    for _ in range(200):
        x = make_text(random_ranks(rng, 100, 2), 2)
        m = int(rng.integers(3, 100))
        r = run_average(x, m)
        assert r.c1.tolist() == brute_force(x, m, 1).tolist()
        assert r.c0.tolist() == brute_force(x, m, 0).tolist()


def test_budget(rng):
    x = make_text(np.zeros(200, dtype=np.int32), 1)
    with pytest.raises(BudgetExceeded):
        run_average(x, 3, budget=100)
    t = make_text(random_ranks(rng, 300, 4), 4)
    events = block_events(build_index(t), 12)
    assert run_average(t, 12, budget=events).meta["events"] == events
    with pytest.raises(BudgetExceeded):
        run_average(t, 12, budget=events - 1) if events else (_ for _ in ()).throw(BudgetExceeded(0, -1))


def test_average_condition():
    assert meets_average_condition(200_000, 4, 64)
    assert not meets_average_condition(200_000, 4, 20)
    assert not meets_average_condition(100, 1, 50)
