"""Algorithm selection and the single entry point used by the CLI."""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from .average import DEFAULT_BUDGET_FACTOR, BudgetExceeded, meets_average_condition, run_average
from .core import MappabilityResult, brute_force
from .heavypath import run_heavypath
from .suffix_index import build_dual
from .suffix_tree import build_tree
from .text import Alphabet, IntText, reverse
from .treewalk import run_treewalk

log = logging.getLogger(__name__)

ALGORITHMS = ("auto", "naive", "average", "treewalk", "heavypath")
LARGE_SIGMA = 64


def worst_case_choice(n: int, m: int) -> str:
    """Heavy paths once ``m`` exceeds ``ceil(log2(n)^2)``, otherwise the O(mn) walk."""
    threshold = math.ceil(math.log2(max(n, 2)) ** 2)
    return "heavypath" if m > threshold else "treewalk"


def choose_algorithm(n: int, sigma: int, m: int) -> str:
    if meets_average_condition(n, sigma, m):
        return "average"
    return worst_case_choice(n, m)


def run_naive(t: IntText, m: int) -> MappabilityResult:
    return MappabilityResult(m, brute_force(t, m, 0), brute_force(t, m, 1), t.source_name, "naive")


def compute(
    t: IntText,
    m: int,
    algo: str = "auto",
    budget_factor: Optional[float] = DEFAULT_BUDGET_FACTOR,
) -> MappabilityResult:
    """Distance-0 and distance-exactly-1 counts for every window of length ``m``."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    if not 1 <= m <= t.n:
        raise ValueError(f"window length {m} outside [1, {t.n}]")
    if algo == "auto":
        algo = choose_algorithm(t.n, t.sigma, m)
        if algo == "average":
            budget = None if budget_factor is None else int(budget_factor * t.n)
            try:
                res = run_average(t, m, budget=budget)
            except BudgetExceeded as exc:
                algo = worst_case_choice(t.n, m)
                log.warning("%s; falling back to %s", exc, algo)
            else:
                res.meta["selected"] = "auto"
                return res
    if algo == "heavypath" and t.sigma > LARGE_SIGMA:
        log.warning("alphabet of %d letters: heavypath costs O(sigma log n) per node and level", t.sigma)
    if algo == "naive":
        return run_naive(t, m)
    if algo == "average":
        return run_average(t, m)
    if algo == "treewalk":
        return run_treewalk(t, m)
    return run_heavypath(t, m)


def run_all(t: IntText, m: int) -> dict:
    """Every applicable algorithm on one text, sharing index and tree construction."""
    dual = build_dual(t)
    fwd = build_tree(t, dual.fwd)
    rev = build_tree(reverse(t), dual.rev)
    out = {"naive": run_naive(t, m)}
    if m >= 3:
        out["average"] = run_average(t, m, dual=dual)
    out["treewalk"] = run_treewalk(t, m, trees=(fwd, rev))
    out["heavypath"] = run_heavypath(t, m, tree=fwd)
    return out


def random_text(rng: np.random.Generator, n: int, sigma: int) -> IntText:
    return IntText(rng.integers(0, sigma, n, dtype=np.int32), Alphabet.integer(sigma))
