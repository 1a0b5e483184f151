"""Average-case linear-time 1-mappability via aligned blocks and LCE extension.

Every pair of length-``m`` windows at Hamming distance 1 shares an exact,
aligned block of length ``L = m // 3`` starting at a multiple of ``L``.
Blocks are matched through runs of the LCP array, each match is extended
with two LCE queries per direction, and every window pair found this way
adds ``1/t`` to both windows, where ``t`` is the number of times the pair
is found. Counters are kept scaled by 2520 so the fractions stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

import numpy as np

from ._jit import njit
from .core import MAX_T, SCALE, MappabilityResult, ScaledCounter, zero_map
from .suffix_index import DualIndex, SuffixIndex, build_dual, lce
from .text import IntText

__all__ = [
    "BlockPlan",
    "Extension",
    "BudgetExceeded",
    "plan_blocks",
    "lcp_groups",
    "extend_pair",
    "enumerate_windows",
    "t_value",
    "block_events",
    "run_average",
    "meets_average_condition",
    "DEFAULT_BUDGET_FACTOR",
]

DEFAULT_BUDGET_FACTOR = 64


class BudgetExceeded(RuntimeError):
    def __init__(self, events: int, budget: int):
        super().__init__(f"average algorithm exceeded its budget of {budget} extension events")
        self.events = events
        self.budget = budget


@dataclass(frozen=True)
class BlockPlan:
    n: int
    m: int
    L: int

    @property
    def starts(self) -> np.ndarray:
        return np.arange(0, self.n - self.L + 1, self.L)

    @property
    def count(self) -> int:
        return self.n // self.L


def plan_blocks(n: int, m: int) -> BlockPlan:
    if m < 3:
        raise ValueError("average algorithm requires m >= 3")
    if m > n:
        raise ValueError(f"window length {m} exceeds text length {n}")
    return BlockPlan(n, m, m // 3)


def meets_average_condition(n: int, sigma: int, m: int) -> bool:
    """``m >= 3 log n / log sigma + 3``, the regime where the expected work is linear."""
    if sigma < 2 or m < 3:
        return False
    return m >= 3 * math.log(n) / math.log(sigma) + 3


class _Lce(NamedTuple):
    fisa: np.ndarray
    ftable: np.ndarray
    flog2: np.ndarray
    risa: np.ndarray
    rtable: np.ndarray
    rlog2: np.ndarray


def _lce_arrays(d: DualIndex) -> _Lce:
    return _Lce(d.fwd.isa, d.fwd.table, d.fwd.log2, d.rev.isa, d.rev.table, d.rev.log2)


@njit
def _lcs(D, i, j):
    n = D.fisa.shape[0]
    if i < 0 or j < 0:
        return 0
    return lce(D.risa, D.rtable, D.rlog2, n - 1 - i, n - 1 - j)


@njit
def _lcp(D, i, j):
    n = D.fisa.shape[0]
    if i >= n or j >= n:
        return 0
    return lce(D.fisa, D.ftable, D.flog2, i, j)


@njit
def _extend(D, i, j, L):
    a = _lcs(D, i - 1, j - 1)
    l1 = i - 1 - a
    l1p = j - 1 - a
    a2 = _lcs(D, l1 - 1, l1p - 1)
    l2 = l1 - 1 - a2
    c = _lcp(D, i + L, j + L)
    r1 = i + L + c
    r1p = j + L + c
    c2 = _lcp(D, r1 + 1, r1p + 1)
    r2 = r1 + 1 + c2
    return a, l1, l1p, a2, l2, c, r1, r1p, c2, r2


@njit
def _window_bounds(n, m, L, i, j, l1, l1p, l2, r1, r1p, r2):
    shift = i - j
    p_lo, p_hi = 0, -1
    if l1 >= 0 and l1p >= 0:
        p_lo = max(max(l2 + 1, i + L - m), max(shift, 0))
        p_hi = min(l1, r1 - m)
    q_lo, q_hi = 0, -1
    if r1 <= n - 1 and r1p <= n - 1:
        q_lo = max(max(l1 + 1, r1 - m + 1), max(shift, 0))
        q_hi = min(i, r2 - m)
    return p_lo, p_hi, q_lo, q_hi


@njit
def _blocks_avoiding(w, mu, m, L):
    # aligned blocks fully inside [w, w+m-1] that do not contain mu
    first = (w + L - 1) // L
    last = (w + m - L) // L
    count = last - first + 1
    b0 = (mu // L) * L
    if b0 >= w and b0 + L <= w + m:
        count -= 1
    return count


@njit
def _t(p, pp, mu, mup, m, L):
    return _blocks_avoiding(p, mu, m, L) + _blocks_avoiding(pp, mup, m, L)


@njit
def _run_average(x, sa, lcp, D, m, budget, cells):
    n = x.shape[0]
    L = m // 3
    unit = SCALE
    events = 0
    start = 0
    for end in range(1, n + 1):
        if end < n and lcp[end] >= L:
            continue
        # maximal run of ranks [start, end) sharing >= L letters
        if end - start > 1:
            for r in range(start, end):
                i = sa[r]
                if i % L != 0 or i + L > n:
                    continue
                for s in range(start, end):
                    if s == r:
                        continue
                    events += 1
                    if budget >= 0 and events > budget:
                        return events, False
                    j = sa[s]
                    a, l1, l1p, a2, l2, c, r1, r1p, c2, r2 = _extend(D, i, j, L)
                    p_lo, p_hi, q_lo, q_hi = _window_bounds(n, m, L, i, j, l1, l1p, l2, r1, r1p, r2)
                    shift = j - i
                    for p in range(p_lo, p_hi + 1):
                        t = _t(p, p + shift, l1, l1p, m, L)
                        if t < 1 or t > MAX_T:
                            raise AssertionError("t-value out of range")
                        cells[p] += unit // t
                        cells[p + shift] += unit // t
                    for q in range(q_lo, q_hi + 1):
                        t = _t(q, q + shift, r1, r1p, m, L)
                        if t < 1 or t > MAX_T:
                            raise AssertionError("t-value out of range")
                        cells[q] += unit // t
                        cells[q + shift] += unit // t
        start = end
    return events, True


# ------------------------------------------------------- inspection API ----

@dataclass(frozen=True)
class Extension:
    """Mismatch positions around the aligned match of blocks at ``i`` and ``j``.

    ``l1``/``l1p`` are the first mismatches to the left and ``l2``/``l2p``
    the second; ``r1``/``r1p`` and ``r2``/``r2p`` mirror them on the right.
    Values below 0 or at/after ``n`` mean the text boundary was reached.
    """

    i: int
    j: int
    L: int
    a: int
    l1: int
    l1p: int
    a2: int
    l2: int
    c: int
    r1: int
    r1p: int
    c2: int
    r2: int

    @property
    def l2p(self) -> int:
        return self.l1p - 1 - self.a2

    @property
    def r2p(self) -> int:
        return self.r1p + 1 + self.c2


def lcp_groups(idx: SuffixIndex, L: int, plan: Optional[BlockPlan] = None) -> Iterator[np.ndarray]:
    """Position sets of maximal LCP runs (``>= L``) that contain a block start."""
    n = idx.n
    start = 0
    for end in range(1, n + 1):
        if end < n and idx.lcp[end] >= L:
            continue
        if end - start > 1:
            members = idx.sa[start:end]
            if np.any((members % L == 0) & (members + L <= n)):
                yield np.array(members)
        start = end


def extend_pair(d: DualIndex, i: int, j: int, m: int, L: int) -> Extension:
    if i == j:
        raise ValueError("extend_pair needs two distinct positions")
    if i % L:
        raise ValueError(f"{i} is not a block start for L={L}")
    vals = _extend(_lce_arrays(d), i, j, L)
    return Extension(i, j, L, *(int(v) for v in vals))


def enumerate_windows(e: Extension, m: int, L: int, n: int) -> list:
    """``(p, p', mismatch)`` triples implied by one extension."""
    p_lo, p_hi, q_lo, q_hi = _window_bounds(n, m, L, e.i, e.j, e.l1, e.l1p, e.l2, e.r1, e.r1p, e.r2)
    shift = e.j - e.i
    out = [(p, p + shift, e.l1) for p in range(p_lo, p_hi + 1)]
    out += [(q, q + shift, e.r1) for q in range(q_lo, q_hi + 1)]
    return out


def t_value(p: int, pp: int, mu: int, mup: int, m: int, L: int) -> int:
    """Number of extension events that discover the window pair ``(p, pp)``."""
    t = int(_t(p, pp, mu, mup, m, L))
    if t < 1:
        raise AssertionError(f"pair ({p}, {pp}) would never be discovered")
    return t


def block_events(idx: SuffixIndex, m: int) -> int:
    """Number of (block, partner) extension events a full run performs."""
    L = m // 3
    total = 0
    for members in lcp_groups(idx, L):
        starts = np.count_nonzero((members % L == 0) & (members + L <= idx.n))
        total += int(starts) * (len(members) - 1)
    return total


def run_average(
    t,
    m: int,
    budget: Optional[int] = None,
    dual: Optional[DualIndex] = None,
) -> MappabilityResult:
    """Exact 1-mappability; ``budget`` caps extension events (``BudgetExceeded`` past it)."""
    x = t.ranks if isinstance(t, IntText) else np.ascontiguousarray(t, dtype=np.int32)
    n = len(x)
    plan_blocks(n, m)
    if dual is None:
        dual = build_dual(t)
    counter = ScaledCounter(n - m + 1)
    limit = -1 if budget is None else int(budget)
    events, done = _run_average(x, dual.fwd.sa, dual.fwd.lcp, _lce_arrays(dual), m, limit, counter.cells)
    if not done:
        raise BudgetExceeded(int(events), limit)
    c1 = counter.finalize()
    c0 = zero_map(dual.fwd, m)
    name = t.source_name if isinstance(t, IntText) else None
    return MappabilityResult(m, c0, c1, name, "average", {"events": int(events), "scaled": counter.cells})
