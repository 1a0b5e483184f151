"""Result arrays, the exact fractional accumulator, and the reference counters."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._jit import njit
from .suffix_index import SuffixIndex
from .text import IntText

__all__ = [
    "SCALE",
    "MAX_T",
    "FractionalResidueError",
    "MappabilityResult",
    "ScaledCounter",
    "brute_force",
    "zero_map",
    "at_most_one",
]

# lcm(1..10): every 1/t increment with t <= 10 is an exact integer multiple
SCALE = 2520
MAX_T = 10


class FractionalResidueError(ArithmeticError):
    """A scaled counter did not sum to whole pairs."""


@dataclass(frozen=True, eq=False)
class MappabilityResult:
    m: int
    c0: np.ndarray
    c1: np.ndarray
    name: Optional[str] = None
    algorithm: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.c0) != len(self.c1):
            raise ValueError("c0 and c1 must have the same length")

    @property
    def at_most(self) -> np.ndarray:
        return at_most_one(self)

    def counts(self, k: int = 1, mode: str = "at-most") -> np.ndarray:
        if k == 0:
            return self.c0
        return self.at_most if mode == "at-most" else self.c1


class ScaledCounter:
    """Per-position accumulator of multiples of ``1/t`` for ``1 <= t <= 10``.

    Cells hold ``SCALE * value``; :meth:`finalize` divides back and refuses
    any remainder.
    """

    scale = SCALE

    def __init__(self, size: int):
        self.cells = np.zeros(size, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.cells)

    def add_fraction(self, pos: int, t: int) -> None:
        if not 1 <= t <= MAX_T:
            raise AssertionError(f"t={t} outside [1, {MAX_T}] at position {pos}")
        self.cells[pos] += SCALE // t

    def finalize(self) -> np.ndarray:
        q, r = np.divmod(self.cells, SCALE)
        bad = np.flatnonzero(r)
        if bad.size:
            i = int(bad[0])
            raise FractionalResidueError(
                f"fractional residue at position {i}: {self.cells[i]} is not a multiple of {SCALE}"
            )
        return q


@njit
def _brute_force(x, m, k):
    n = x.shape[0]
    w = n - m + 1
    out = np.zeros(w, dtype=np.int64)
    for i in range(w):
        for j in range(i + 1, w):
            dist = 0
            for o in range(m):
                if x[i + o] != x[j + o]:
                    dist += 1
                    if dist > k:
                        break
            if dist == k:
                out[i] += 1
                out[j] += 1
    return out


def brute_force(t, m: int, k: int) -> np.ndarray:
    """Direct pairwise count of windows at Hamming distance exactly ``k``."""
    x = t.ranks if isinstance(t, IntText) else np.ascontiguousarray(t, dtype=np.int32)
    if not 1 <= m <= len(x):
        raise ValueError(f"window length {m} outside [1, {len(x)}]")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _brute_force(x, m, k)


@njit
def _zero_map(sa, lcp, m):
    n = sa.shape[0]
    out = np.zeros(n - m + 1, dtype=np.int64)
    start = 0
    for r in range(1, n + 1):
        if r < n and lcp[r] >= m:
            continue
        g = r - start
        if g > 1:
            for q in range(start, r):
                out[sa[q]] = g - 1
        start = r
    return out


def zero_map(idx: SuffixIndex, m: int) -> np.ndarray:
    """Occurrence count minus one of every length-``m`` window, from LCP runs."""
    if not 1 <= m <= idx.n:
        raise ValueError(f"window length {m} outside [1, {idx.n}]")
    return _zero_map(idx.sa, idx.lcp, m)


def at_most_one(r: MappabilityResult) -> np.ndarray:
    if len(r.c0) != len(r.c1):
        raise ValueError("c0 and c1 lengths differ")
    return np.asarray(r.c0) + np.asarray(r.c1)
