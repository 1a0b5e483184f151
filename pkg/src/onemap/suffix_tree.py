"""Array-backed suffix tree built from SA + LCP.

Nodes are integers; node 0 is the root. A position in the trie is a
:class:`NodeRef` ``(node, depth)`` where ``node`` is the lower (deeper)
explicit endpoint of the edge containing it, so implicit nodes have a
canonical, hashable form. Each explicit node stores its string-depth and
the SA interval ``[lo, hi]`` of suffixes that start with its path-label.

No terminator letter is used, so a suffix that is a prefix of another
suffix ends at an internal node. "Leaves" of a subtree are therefore
counted as the suffixes it contains, ``hi - lo + 1``.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from ._jit import njit
from .suffix_index import SuffixIndex, build_index, lce
from .text import IntText

__all__ = [
    "NodeRef",
    "TreeArrays",
    "SuffixTree",
    "HeavyDecomposition",
    "build_tree",
    "child",
    "ascend",
    "level_ancestor",
    "suf_node",
    "concat_nodes",
    "heavy_paths",
]

NONE = -1


class NodeRef(NamedTuple):
    node: int
    depth: int


class TreeArrays(NamedTuple):
    # text and index
    x: np.ndarray
    sa: np.ndarray
    isa: np.ndarray
    table: np.ndarray
    log2: np.ndarray
    # explicit nodes
    parent: np.ndarray
    depth: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    term: np.ndarray
    # children in letter order, CSR layout
    child_ptr: np.ndarray
    children: np.ndarray
    child_letter: np.ndarray
    leaf_of_rank: np.ndarray
    # heavy paths; hpos is a preorder with heavy children first
    heavy: np.ndarray
    head: np.ndarray
    hpos: np.ndarray
    order: np.ndarray


# ---------------------------------------------------------------- build ----

@njit
def _stack_build(sa, lcp):
    n = sa.shape[0]
    cap = 2 * n + 1
    parent = np.full(cap, NONE, dtype=np.int32)
    depth = np.zeros(cap, dtype=np.int32)
    lo = np.zeros(cap, dtype=np.int32)
    hi = np.zeros(cap, dtype=np.int32)
    term = np.full(cap, NONE, dtype=np.int32)
    stack = np.zeros(cap, dtype=np.int32)
    hi[0] = n - 1
    count = 1
    sp = 1
    for r in range(n):
        h = lcp[r] if r > 0 else 0
        last = NONE
        while depth[stack[sp - 1]] > h:
            last = stack[sp - 1]
            hi[last] = r - 1
            sp -= 1
        top = stack[sp - 1]
        if depth[top] < h:
            v = count
            count += 1
            depth[v] = h
            parent[v] = top
            lo[v] = lo[last]
            parent[last] = v
            stack[sp] = v
            sp += 1
            top = v
        leaf = count
        count += 1
        depth[leaf] = n - sa[r]
        parent[leaf] = top
        lo[leaf] = r
        term[leaf] = sa[r]
        stack[sp] = leaf
        sp += 1
    while sp > 1:
        hi[stack[sp - 1]] = n - 1
        sp -= 1
    return parent[:count], depth[:count], lo[:count], hi[:count], term[:count]


@njit
def _heavy_build(child_ptr, children, lo, hi):
    count = lo.shape[0]
    heavy = np.full(count, NONE, dtype=np.int32)
    for v in range(count):
        best = -1
        for k in range(child_ptr[v], child_ptr[v + 1]):
            c = children[k]
            w = hi[c] - lo[c] + 1
            if w > best:
                best = w
                heavy[v] = c
    head = np.zeros(count, dtype=np.int32)
    hpos = np.zeros(count, dtype=np.int32)
    order = np.zeros(count, dtype=np.int32)
    stack = np.zeros(count, dtype=np.int32)
    stack[0] = 0
    sp = 1
    pos = 0
    while sp > 0:
        sp -= 1
        v = stack[sp]
        hpos[v] = pos
        order[pos] = v
        pos += 1
        for k in range(child_ptr[v + 1] - 1, child_ptr[v] - 1, -1):
            c = children[k]
            if c != heavy[v]:
                head[c] = c
                stack[sp] = c
                sp += 1
        if heavy[v] != NONE:
            head[heavy[v]] = head[v]
            stack[sp] = heavy[v]
            sp += 1
    return heavy, head, hpos, order


@njit
def _children_csr(parent, lo, n):
    # two stable counting sorts: by SA start, then by parent
    count = parent.shape[0]
    by_lo = np.zeros(n + 1, dtype=np.int32)
    for v in range(1, count):
        by_lo[lo[v] + 1] += 1
    for r in range(n):
        by_lo[r + 1] += by_lo[r]
    tmp = np.zeros(count - 1, dtype=np.int32)
    for v in range(1, count):
        tmp[by_lo[lo[v]]] = v
        by_lo[lo[v]] += 1
    child_ptr = np.zeros(count + 1, dtype=np.int32)
    for v in range(1, count):
        child_ptr[parent[v] + 1] += 1
    for v in range(count):
        child_ptr[v + 1] += child_ptr[v]
    fill = child_ptr[:-1].copy()
    kids = np.zeros(count - 1, dtype=np.int32)
    for k in range(count - 1):
        v = tmp[k]
        kids[fill[parent[v]]] = v
        fill[parent[v]] += 1
    return child_ptr, kids


def _assemble(idx: SuffixIndex) -> TreeArrays:
    parent, depth, lo, hi, term = _stack_build(idx.sa, idx.lcp)
    child_ptr, kids = _children_csr(parent, lo, idx.n)
    child_letter = idx.x[idx.sa[lo[kids]] + depth[parent[kids]]].astype(np.int32)
    leaf_of_rank = np.empty(idx.n, dtype=np.int32)
    terminals = np.flatnonzero(term >= 0).astype(np.int32)
    leaf_of_rank[lo[terminals]] = terminals
    heavy, head, hpos, order = _heavy_build(child_ptr, kids, lo, hi)
    arrays = TreeArrays(
        idx.x, idx.sa, idx.isa, idx.table, idx.log2,
        parent, depth, lo, hi, term,
        child_ptr, kids, child_letter, leaf_of_rank,
        heavy, head, hpos, order,
    )
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


# -------------------------------------------------------------- kernels ----

@njit
def node_child(T, e, d, c):
    """Child of ``(e, d)`` along letter ``c``; returns ``(-1, -1)`` when absent."""
    if d < T.depth[e]:
        if T.x[T.sa[T.lo[e]] + d] == c:
            return e, d + 1
        return NONE, NONE
    a = T.child_ptr[e]
    b = T.child_ptr[e + 1]
    while a < b:
        mid = (a + b) >> 1
        if T.child_letter[mid] < c:
            a = mid + 1
        else:
            b = mid
    if a < T.child_ptr[e + 1] and T.child_letter[a] == c:
        return T.children[a], d + 1
    return NONE, NONE


@njit
def node_ascend(T, e, d):
    p = T.parent[e]
    if T.depth[p] == d - 1:
        return p, d - 1
    return e, d - 1


@njit
def node_level_ancestor(T, e, d):
    """Explicit endpoint of the ancestor of ``e`` at string-depth ``d``."""
    if d == 0:
        return 0
    while True:
        h = T.head[e]
        if h == 0 or T.depth[T.parent[h]] < d:
            a = T.hpos[h]
            b = T.hpos[e]
            while a < b:
                mid = (a + b) >> 1
                if T.depth[T.order[mid]] < d:
                    a = mid + 1
                else:
                    b = mid
            return T.order[a]
        e = T.parent[h]


@njit
def node_suf(T, e, d, drop):
    """Explicit endpoint of the node labelled by ``L(e, d)`` minus its first ``drop`` letters."""
    if drop == d:
        return 0
    r = T.isa[T.sa[T.lo[e]] + drop]
    return node_level_ancestor(T, T.leaf_of_rank[r], d - drop)


@njit
def _compare(T, s, pos, length):
    # sign of (suffix s) vs pattern x[pos:pos+length], prefix match counts as equal
    l = lce(T.isa, T.table, T.log2, s, pos)
    if l >= length:
        return 0
    if s + l >= T.x.shape[0]:
        return -1
    if T.x[s + l] < T.x[pos + l]:
        return -1
    return 1


@njit
def narrow_range(T, lo, hi, offset, pos, length):
    """Sub-interval of ranks ``[lo, hi]`` whose suffixes, after ``offset``
    letters, start with ``x[pos:pos+length]``. Returns ``(-1, -1)`` if empty.
    """
    if length == 0:
        return lo, hi
    a = lo
    b = hi + 1
    while a < b:
        mid = (a + b) >> 1
        if _compare(T, T.sa[mid] + offset, pos, length) < 0:
            a = mid + 1
        else:
            b = mid
    first = a
    b = hi + 1
    while a < b:
        mid = (a + b) >> 1
        if _compare(T, T.sa[mid] + offset, pos, length) <= 0:
            a = mid + 1
        else:
            b = mid
    if a == first:
        return NONE, NONE
    return first, a - 1


@njit
def node_concat(T, eu, du, ev, dv):
    """Node and SA range of ``L(u) L(v)``; ``(-1, -1, -1)`` when it does not occur."""
    if dv == 0:
        return eu, T.lo[eu], T.hi[eu]
    a, b = narrow_range(T, T.lo[eu], T.hi[eu], du, T.sa[T.lo[ev]], dv)
    if a < 0:
        return NONE, NONE, NONE
    return node_level_ancestor(T, T.leaf_of_rank[a], du + dv), a, b


# --------------------------------------------------------------- facade ----

class HeavyDecomposition:
    """Heavy child per node, head of each node's heavy path, and the paths."""

    def __init__(self, arrays: TreeArrays):
        self.heavy = arrays.heavy
        self.head = arrays.head
        self._order = arrays.order
        self._hpos = arrays.hpos

    def path_of(self, v: int) -> np.ndarray:
        """Nodes of ``v``'s heavy path, top-down."""
        h = self.head[v]
        end = self._hpos[h]
        while end + 1 < len(self._order) and self.head[self._order[end + 1]] == h:
            end += 1
        return self._order[self._hpos[h] : end + 1]

    def paths(self) -> list:
        heads = np.flatnonzero(self.head == np.arange(len(self.head)))
        return [self.path_of(int(h)) for h in heads]


class SuffixTree:
    """Suffix tree of one text; immutable and safe to share between readers."""

    def __init__(self, arrays: TreeArrays, index: SuffixIndex, text: Optional[IntText] = None):
        self.arrays = arrays
        self.index = index
        self.text = text

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def n_nodes(self) -> int:
        return len(self.arrays.parent)

    @property
    def root(self) -> NodeRef:
        return NodeRef(0, 0)

    def _letter(self, c) -> int:
        if isinstance(c, (bytes, str)):
            if self.text is None:
                raise TypeError("tree built without an alphabet; pass ranks")
            code = c.encode() if isinstance(c, str) else c
            return self.text.alphabet.rank_of.get(code[0], -1)
        return int(c)

    def is_explicit(self, u: NodeRef) -> bool:
        return u.depth == int(self.arrays.depth[u.node])

    def interval(self, u: NodeRef) -> tuple:
        return int(self.arrays.lo[u.node]), int(self.arrays.hi[u.node])

    def occurrences(self, u: NodeRef) -> int:
        lo, hi = self.interval(u)
        return hi - lo + 1

    def label(self, u: NodeRef) -> np.ndarray:
        start = int(self.arrays.sa[self.arrays.lo[u.node]])
        return self.arrays.x[start : start + u.depth]

    def leaf(self, i: int) -> NodeRef:
        """Node where suffix ``i`` ends."""
        e = int(self.arrays.leaf_of_rank[self.arrays.isa[i]])
        return NodeRef(e, self.n - i)

    def leaf_count(self, e: int) -> int:
        return int(self.arrays.hi[e] - self.arrays.lo[e] + 1)

    def children(self, e: int) -> list:
        a = self.arrays
        ks = range(a.child_ptr[e], a.child_ptr[e + 1])
        return [(int(a.child_letter[k]), int(a.children[k])) for k in ks]

    def child(self, u: NodeRef, c) -> Optional[NodeRef]:
        c = self._letter(c)
        e, d = node_child(self.arrays, u.node, u.depth, c)
        return None if e < 0 else NodeRef(int(e), int(d))

    def locate(self, pattern) -> Optional[NodeRef]:
        """Walk ``pattern`` (ranks, or bytes/str when an alphabet is known) from the root."""
        if isinstance(pattern, str):
            pattern = pattern.encode()
        u = self.root
        for c in pattern:
            if isinstance(pattern, bytes):
                c = bytes([c])
            u = self.child(u, c)
            if u is None:
                return None
        return u

    def ascend(self, u: NodeRef) -> NodeRef:
        if u.depth < 1:
            raise ValueError("cannot ascend from the root")
        e, d = node_ascend(self.arrays, u.node, u.depth)
        return NodeRef(int(e), int(d))

    def level_ancestor(self, u: NodeRef, d: int) -> NodeRef:
        if not 0 <= d <= u.depth:
            raise ValueError(f"level_ancestor depth {d} outside [0, {u.depth}]")
        return NodeRef(int(node_level_ancestor(self.arrays, u.node, d)), d)

    def suf_node(self, u: NodeRef, drop: int) -> NodeRef:
        if not 0 <= drop <= u.depth:
            raise ValueError(f"suf_node length {drop} outside [0, {u.depth}]")
        return NodeRef(int(node_suf(self.arrays, u.node, u.depth, drop)), u.depth - drop)

    def concat_nodes(self, u: NodeRef, v: NodeRef):
        """``(NodeRef, (lo, hi))`` for ``L(u) L(v)``, or ``None`` when it does not occur."""
        e, a, b = node_concat(self.arrays, u.node, u.depth, v.node, v.depth)
        if e < 0:
            return None
        return NodeRef(int(e), u.depth + v.depth), (int(a), int(b))

    def heavy_paths(self) -> HeavyDecomposition:
        return HeavyDecomposition(self.arrays)


def build_tree(t, idx: Optional[SuffixIndex] = None) -> SuffixTree:
    if idx is None:
        idx = build_index(t)
    text = t if isinstance(t, IntText) else None
    return SuffixTree(_assemble(idx), idx, text)


def child(tree: SuffixTree, u: NodeRef, c):
    return tree.child(u, c)


def ascend(tree: SuffixTree, u: NodeRef) -> NodeRef:
    return tree.ascend(u)


def level_ancestor(tree: SuffixTree, u: NodeRef, d: int) -> NodeRef:
    return tree.level_ancestor(u, d)


def suf_node(tree: SuffixTree, u: NodeRef, drop: int) -> NodeRef:
    return tree.suf_node(u, drop)


def concat_nodes(tree: SuffixTree, u: NodeRef, v: NodeRef):
    return tree.concat_nodes(u, v)


def heavy_paths(tree: SuffixTree) -> HeavyDecomposition:
    return tree.heavy_paths()
