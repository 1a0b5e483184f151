"""Suffix array, LCP array and constant-time longest-common-extension queries."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._jit import njit
from .text import IntText, reverse

__all__ = [
    "SuffixIndex",
    "DualIndex",
    "suffix_array",
    "lcp_array",
    "build_index",
    "build_dual",
    "lce_forward",
    "lce_backward",
]


@njit
def _doubling(x):
    n = x.shape[0]
    sigma = 0
    for i in range(n):
        if x[i] + 1 > sigma:
            sigma = x[i] + 1
    rank = np.zeros(n, dtype=np.int64)
    for i in range(n):
        rank[i] = x[i]
    n_ranks = sigma
    sa = np.arange(n).astype(np.int64)
    tmp = np.zeros(n, dtype=np.int64)
    second = np.zeros(n, dtype=np.int64)
    fresh = np.zeros(n, dtype=np.int64)
    k = 1
    while True:
        for i in range(n):
            second[i] = rank[i + k] + 1 if i + k < n else 0
        # LSD radix: by second key, then stably by first key
        bucket = np.zeros(n_ranks + 2, dtype=np.int64)
        for i in range(n):
            bucket[second[i] + 1] += 1
        for b in range(n_ranks + 1):
            bucket[b + 1] += bucket[b]
        for i in range(n):
            tmp[bucket[second[i]]] = i
            bucket[second[i]] += 1
        bucket = np.zeros(n_ranks + 1, dtype=np.int64)
        for i in range(n):
            bucket[rank[i] + 1] += 1
        for b in range(n_ranks):
            bucket[b + 1] += bucket[b]
        for q in range(n):
            i = tmp[q]
            sa[bucket[rank[i]]] = i
            bucket[rank[i]] += 1
        r = 0
        fresh[sa[0]] = 0
        for q in range(1, n):
            a = sa[q - 1]
            b = sa[q]
            if rank[a] != rank[b] or second[a] != second[b]:
                r += 1
            fresh[b] = r
        for i in range(n):
            rank[i] = fresh[i]
        n_ranks = r + 1
        if n_ranks == n or k >= n:
            break
        k *= 2
    return sa.astype(np.int32)


def suffix_array(ranks: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling with radix passes, O(n log n).

    No terminator is appended: a suffix that is a proper prefix of another
    sorts first.
    """
    return _doubling(np.ascontiguousarray(ranks, dtype=np.int32))


@njit
def _kasai(x, sa, isa):
    n = x.shape[0]
    lcp = np.zeros(n, dtype=np.int32)
    h = 0
    for i in range(n):
        r = isa[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and x[i + h] == x[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


def lcp_array(x: np.ndarray, sa: np.ndarray, isa: np.ndarray) -> np.ndarray:
    """Kasai et al. LCP array, ``lcp[0] = 0``."""
    return _kasai(np.asarray(x, dtype=np.int32), sa, isa)


def _sparse_table(values: np.ndarray):
    n = len(values)
    levels = max(1, int(n).bit_length())
    table = np.zeros((levels, n), dtype=np.int32)
    table[0] = values
    for k in range(1, levels):
        half = 1 << (k - 1)
        width = n - (1 << k) + 1
        if width <= 0:
            break
        np.minimum(table[k - 1, :width], table[k - 1, half : half + width], out=table[k, :width])
    log2 = np.zeros(n + 1, dtype=np.int32)
    for k in range(1, levels):
        log2[1 << k :] += 1
    return table, log2


@njit
def range_min(table, log2, lo, hi):
    """Minimum of the underlying array over the inclusive range ``[lo, hi]``."""
    k = log2[hi - lo + 1]
    a = table[k, lo]
    b = table[k, hi - (1 << k) + 1]
    return a if a < b else b


@njit
def lce(isa, table, log2, i, j):
    """Longest common prefix of suffixes ``i`` and ``j``; position ``n`` is the empty suffix."""
    n = isa.shape[0]
    if i >= n or j >= n:
        return 0
    if i == j:
        return n - i
    a = isa[i]
    b = isa[j]
    if a > b:
        a, b = b, a
    return range_min(table, log2, a + 1, b)


@dataclass(frozen=True, eq=False)
class SuffixIndex:
    """SA, iSA, LCP and a sparse-table RMQ over LCP for one text."""

    x: np.ndarray
    sa: np.ndarray
    isa: np.ndarray
    lcp: np.ndarray
    table: np.ndarray
    log2: np.ndarray

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    def lce(self, i: int, j: int) -> int:
        return lce_forward(self, i, j)

    def range_min(self, lo: int, hi: int) -> int:
        if not 0 <= lo <= hi < self.n:
            raise ValueError(f"bad RMQ range [{lo}, {hi}]")
        return int(range_min(self.table, self.log2, lo, hi))


@dataclass(frozen=True, eq=False)
class DualIndex:
    """Indexes of a text and of its reverse, for forward and backward extensions."""

    fwd: SuffixIndex
    rev: SuffixIndex

    @property
    def n(self) -> int:
        return self.fwd.n

    def lcp(self, i: int, j: int) -> int:
        return lce_forward(self.fwd, i, j)

    def lcs(self, i: int, j: int) -> int:
        return lce_backward(self, i, j)


def _as_ranks(t) -> np.ndarray:
    if isinstance(t, IntText):
        return t.ranks
    return np.ascontiguousarray(t, dtype=np.int32)


def build_index(t) -> SuffixIndex:
    x = _as_ranks(t)
    if x.size == 0:
        raise ValueError("cannot index an empty text")
    sa = suffix_array(x)
    isa = np.empty_like(sa)
    isa[sa] = np.arange(len(sa), dtype=np.int32)
    lcp = lcp_array(x, sa, isa)
    table, log2 = _sparse_table(lcp)
    for arr in (sa, isa, lcp, table, log2):
        arr.setflags(write=False)
    return SuffixIndex(x, sa, isa, lcp, table, log2)


def build_dual(t) -> DualIndex:
    if isinstance(t, IntText):
        back = reverse(t)
    else:
        back = _as_ranks(t)[::-1].copy()
    return DualIndex(build_index(t), build_index(back))


def lce_forward(idx: SuffixIndex, i: int, j: int) -> int:
    n = idx.n
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"lce_forward positions must lie in [0, {n}], got ({i}, {j})")
    return int(lce(idx.isa, idx.table, idx.log2, i, j))


def lce_backward(d: DualIndex, i: int, j: int) -> int:
    """Longest common suffix of ``x[0..i]`` and ``x[0..j]``; ``-1`` is the empty prefix."""
    n = d.n
    if not (-1 <= i < n and -1 <= j < n):
        raise ValueError(f"lce_backward positions must lie in [-1, {n - 1}], got ({i}, {j})")
    if i < 0 or j < 0:
        return 0
    r = d.rev
    return int(lce(r.isa, r.table, r.log2, n - 1 - i, n - 1 - j))
