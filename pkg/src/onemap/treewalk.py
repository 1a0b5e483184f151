"""O(mn) 1-mappability by pairing prefix and suffix nodes per mismatch offset.

For a fixed offset ``j``, two windows ``i1, i2`` are at distance 1 with the
mismatch at ``j`` exactly when their first ``j`` letters agree (same node
``u`` in the suffix tree of ``x``), their last ``m - j - 1`` letters agree
(same node ``v`` in the suffix tree of ``rev(x)``), and the letters at
offset ``j`` differ. Windows are bucketed by ``(v, u)`` and each one gains
the bucket size minus the number of windows sharing its letter.
"""
from __future__ import annotations

from collections import defaultdict
from typing import NamedTuple, Optional

import numpy as np

from ._jit import njit
from .core import MappabilityResult, zero_map
from .suffix_tree import NodeRef, SuffixTree, build_tree, node_ascend, node_child
from .text import IntText, reverse

__all__ = ["Triple", "group_and_count", "run_treewalk"]


class Triple(NamedTuple):
    u: NodeRef
    c: int
    i: int


def group_and_count(V, counter: np.ndarray) -> None:
    """Add ``q - r_c`` to ``counter[i]`` for every triple ``(u, c, i)`` in ``V``.

    ``q`` is the number of triples sharing ``u`` and ``r_c`` how many of
    those also share the letter ``c``.
    """
    groups = defaultdict(list)
    for tr in V:
        groups[tr.u].append(tr)
    for members in groups.values():
        q = len(members)
        tally = defaultdict(int)
        for tr in members:
            tally[tr.c] += 1
        for tr in members:
            counter[tr.i] += q - tally[tr.c]


@njit
def _counting_sort(keys, order, n_keys, out):
    # stable sort of ``order`` by keys[order[k]]
    bucket = np.zeros(n_keys + 1, dtype=np.int64)
    for k in range(order.shape[0]):
        bucket[keys[order[k]] + 1] += 1
    for b in range(n_keys):
        bucket[b + 1] += bucket[b]
    for k in range(order.shape[0]):
        key = keys[order[k]]
        out[bucket[key]] = order[k]
        bucket[key] += 1


@njit
def _treewalk(F, R, m, sigma, c1):
    x = F.x
    xr = R.x
    n = x.shape[0]
    w = n - m + 1
    ue = np.zeros(w, dtype=np.int32)
    ud = np.zeros(w, dtype=np.int32)
    ve = np.zeros(w, dtype=np.int32)
    vd = np.zeros(w, dtype=np.int32)
    for i in range(w):
        e, d = 0, 0
        base = n - i - m
        for k in range(m - 1):
            e, d = node_child(R, e, d, xr[base + k])
            if e < 0:
                raise AssertionError("factor missing from reverse suffix tree")
        ve[i] = e
        vd[i] = d
    n_f = F.parent.shape[0]
    n_r = R.parent.shape[0]
    ident = np.arange(w).astype(np.int64)
    by_u = np.zeros(w, dtype=np.int64)
    order = np.zeros(w, dtype=np.int64)
    tally = np.zeros(sigma, dtype=np.int64)
    for j in range(m):
        if j > 0:
            for i in range(w):
                e, d = node_child(F, ue[i], ud[i], x[i + j - 1])
                if e < 0:
                    raise AssertionError("factor missing from suffix tree")
                ue[i] = e
                ud[i] = d
                e, d = node_ascend(R, ve[i], vd[i])
                ve[i] = e
                vd[i] = d
        for i in range(w):
            if vd[i] != m - j - 1:
                raise AssertionError("suffix node at unexpected depth")
        _counting_sort(ue, ident, n_f, by_u)
        _counting_sort(ve, by_u, n_r, order)
        start = 0
        while start < w:
            first = order[start]
            end = start + 1
            while end < w and ve[order[end]] == ve[first] and ue[order[end]] == ue[first]:
                end += 1
            q = end - start
            if q > 1:
                for k in range(start, end):
                    tally[x[order[k] + j]] += 1
                for k in range(start, end):
                    i = order[k]
                    c1[i] += q - tally[x[i + j]]
                for k in range(start, end):
                    tally[x[order[k] + j]] = 0
            start = end


def run_treewalk(
    t,
    m: int,
    trees: Optional[tuple] = None,
) -> MappabilityResult:
    """Exact 1-mappability in O(mn) time; ``trees`` may pass prebuilt ``(T(x), T(rev x))``."""
    if not isinstance(t, IntText):
        raise TypeError("run_treewalk expects an IntText")
    n = t.n
    if not 1 <= m <= n:
        raise ValueError(f"window length {m} outside [1, {n}]")
    if trees is None:
        trees = (build_tree(t), build_tree(reverse(t)))
    fwd: SuffixTree = trees[0]
    rev: SuffixTree = trees[1]
    c1 = np.zeros(n - m + 1, dtype=np.int64)
    _treewalk(fwd.arrays, rev.arrays, m, t.sigma, c1)
    c0 = zero_map(fwd.index, m)
    return MappabilityResult(m, c0, c1, t.source_name, "treewalk")
