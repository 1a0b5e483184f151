"""O(n log^2 n) 1-mappability over a fixed alphabet via heavy paths.

Two distinct length-``m`` factors at distance 1 branch apart at an explicit
node ``u`` and agree after it. Walking the heavy path of a (sub)tree, every
depth-``m`` node ``z`` hanging in a side tree of some ``u`` on the path is
paired with the factors obtained by swapping the letter right after ``u``;
the swapped factor is located with two ``concat`` range searches. Pairs
where one side lies in the heavy subtree are credited back to that side, and
the side trees are processed recursively. Each depth-``m`` node is visited
once per light edge above it, so at most ``log2(n)`` times.

Depth-``m`` nodes are not materialised by splitting edges; a depth-``m``
factor is identified by the explicit node at the bottom of its edge, and
its counter lives at that node id.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._jit import njit
from .core import MappabilityResult, zero_map
from .suffix_tree import NodeRef, SuffixTree, build_tree, node_concat, node_suf
from .text import IntText

__all__ = [
    "DepthMNodes",
    "depth_m_nodes",
    "perform_count",
    "project_counts",
    "run_heavypath",
]

NONE = -1


@dataclass
class DepthMNodes:
    """All depth-``m`` nodes, sorted by SA interval, plus their accumulators.

    ``count`` is indexed by explicit node id; ``visits[k]`` records how many
    times ``nodes[k]`` was enumerated inside a side tree.
    """

    m: int
    nodes: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    count: np.ndarray
    visits: np.ndarray

    def refs(self) -> list:
        return [NodeRef(int(e), self.m) for e in self.nodes]

    def count_of(self, u: NodeRef) -> int:
        if u.depth != self.m:
            raise ValueError("not a depth-m node")
        return int(self.count[u.node])

    def sizes(self) -> np.ndarray:
        return self.hi - self.lo + 1


def depth_m_nodes(tree: SuffixTree, m: int) -> DepthMNodes:
    a = tree.arrays
    depth = a.depth
    parent_depth = np.where(a.parent >= 0, depth[np.maximum(a.parent, 0)], -1)
    nodes = np.flatnonzero((depth >= m) & (parent_depth < m)).astype(np.int32)
    nodes = nodes[np.argsort(a.lo[nodes], kind="stable")]
    return DepthMNodes(
        m,
        nodes,
        a.lo[nodes].astype(np.int32),
        a.hi[nodes].astype(np.int32),
        np.zeros(len(a.parent), dtype=np.int64),
        np.zeros(len(nodes), dtype=np.int32),
    )


@njit
def _lower_bound(arr, value):
    a = 0
    b = arr.shape[0]
    while a < b:
        mid = (a + b) >> 1
        if arr[mid] < value:
            a = mid + 1
        else:
            b = mid
    return a


@njit
def _perform_count(T, root, m, letter_node, zs, zlo, zhi, count, visits):
    stack = np.zeros(T.parent.shape[0], dtype=np.int32)
    stack[0] = root
    sp = 1
    while sp > 0:
        sp -= 1
        u = stack[sp]
        # walk the heavy path of the subtree rooted at ``u``
        while T.depth[u] < m:
            h = T.heavy[u]
            if h == NONE:
                break
            du = T.depth[u]
            wd = m - du - 1
            k0 = T.child_ptr[u]
            k1 = T.child_ptr[u + 1]
            for k in range(k0, k1):
                v = T.children[k]
                if v == h:
                    continue
                a = _lower_bound(zlo, T.lo[v])
                b = _lower_bound(zlo, T.hi[v] + 1)
                for zi in range(a, b):
                    z = zs[zi]
                    visits[zi] += 1
                    size_z = zhi[zi] - zlo[zi] + 1
                    w = node_suf(T, z, m, du + 1)
                    for k2 in range(k0, k1):
                        if k2 == k:
                            continue
                        vc = letter_node[T.child_letter[k2]]
                        e1, a1, b1 = node_concat(T, vc, 1, w, wd)
                        if e1 < 0:
                            continue
                        et, at, bt = node_concat(T, u, du, e1, wd + 1)
                        if et < 0:
                            continue
                        count[z] += bt - at + 1
                        if T.children[k2] == h:
                            count[et] += size_z
                if T.depth[v] < m:
                    stack[sp] = v
                    sp += 1
            u = h


def _letter_nodes(tree: SuffixTree, sigma: int) -> np.ndarray:
    out = np.full(max(sigma, 1), NONE, dtype=np.int32)
    for c, v in tree.children(0):
        out[c] = v
    return out


def perform_count(tree: SuffixTree, nodes: DepthMNodes, root: int = 0, sigma: Optional[int] = None) -> None:
    """Accumulate counts for every depth-``m`` node under explicit node ``root``.

    Depths are absolute: recursing into a side tree below ``u`` keeps the
    target depth ``m`` rather than rebasing it to ``m - D(u)``.
    """
    a = tree.arrays
    if sigma is None:
        sigma = int(a.x.max()) + 1
    _perform_count(
        a, root, nodes.m, _letter_nodes(tree, sigma),
        nodes.nodes, nodes.lo, nodes.hi, nodes.count, nodes.visits,
    )


@njit
def _project(sa, zs, zlo, zhi, count, c1):
    for k in range(zs.shape[0]):
        value = count[zs[k]]
        for r in range(zlo[k], zhi[k] + 1):
            c1[sa[r]] = value


def project_counts(tree: SuffixTree, nodes: DepthMNodes, m: int) -> np.ndarray:
    c1 = np.zeros(tree.n - m + 1, dtype=np.int64)
    _project(tree.arrays.sa, nodes.nodes, nodes.lo, nodes.hi, nodes.count, c1)
    return c1


def run_heavypath(t, m: int, tree: Optional[SuffixTree] = None) -> MappabilityResult:
    if not isinstance(t, IntText):
        raise TypeError("run_heavypath expects an IntText")
    if not 1 <= m <= t.n:
        raise ValueError(f"window length {m} outside [1, {t.n}]")
    if tree is None:
        tree = build_tree(t)
    nodes = depth_m_nodes(tree, m)
    perform_count(tree, nodes, 0, t.sigma)
    c1 = project_counts(tree, nodes, m)
    c0 = zero_map(tree.index, m)
    return MappabilityResult(
        m, c0, c1, t.source_name, "heavypath",
        {"max_visits": int(nodes.visits.max(initial=0))},
    )
