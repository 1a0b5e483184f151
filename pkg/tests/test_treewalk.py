import numpy as np
import pytest

from helpers import WORKED_C1, make_text, random_ranks
from onemap.core import brute_force
from onemap.suffix_tree import NodeRef
from onemap.text import from_string
from onemap.treewalk import Triple, group_and_count, run_treewalk


def test_worked(worked):
    r = run_treewalk(worked, 3)
    assert r.c1.tolist() == WORKED_C1


def test_unary():
    assert run_treewalk(from_string("aaaa"), 2).c1.tolist() == [0, 0, 0]


def test_worked_group():
    u = NodeRef(7, 2)
    letters = "AAACCCGGT"
    V = [Triple(u, ord(c), i) for i, c in enumerate(letters)]
    counter = np.zeros(9, dtype=np.int64)
    group_and_count(V, counter)
    assert counter.tolist() == [6, 6, 6, 6, 6, 6, 7, 7, 8]


def test_group_edge_cases():
    counter = np.zeros(3, dtype=np.int64)
    group_and_count([Triple(NodeRef(1, 1), 0, 0)], counter)
    group_and_count([Triple(NodeRef(2, 1), 1, 1), Triple(NodeRef(2, 1), 1, 2)], counter)
    assert counter.tolist() == [0, 0, 0]


def test_groups_split_by_node():
    counter = np.zeros(2, dtype=np.int64)
    group_and_count([Triple(NodeRef(1, 1), 0, 0), Triple(NodeRef(2, 1), 1, 1)], counter)
    assert counter.tolist() == [0, 0]


@pytest.mark.parametrize("sigma, n, m", [(4, 300, 7), (2, 120, 1), (3, 60, 59), (1, 30, 4)])
def test_random_against_oracle(rng, sigma, n, m):
    for _ in range(40):
        t = make_text(random_ranks(rng, n, sigma), sigma)
        assert run_treewalk(t, m).c1.tolist() == brute_force(t, m, 1).tolist()
