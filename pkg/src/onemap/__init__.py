"""Exact 1-mappability of a text: average-case, O(mn) and O(n log^2 n) algorithms."""
from ._jit import JIT_ENABLED
from .average import run_average
from .core import MappabilityResult, ScaledCounter, at_most_one, brute_force, zero_map
from .heavypath import run_heavypath
from .pipeline import choose_algorithm, compute
from .suffix_index import DualIndex, SuffixIndex, build_dual, build_index, lce_backward, lce_forward
from .suffix_tree import NodeRef, SuffixTree, build_tree
from .text import Alphabet, IntText, from_string, hamming, ingest, reverse
from .treewalk import run_treewalk

__version__ = "0.1.0"

__all__ = [
    "JIT_ENABLED",
    "Alphabet",
    "IntText",
    "from_string",
    "ingest",
    "reverse",
    "hamming",
    "SuffixIndex",
    "DualIndex",
    "build_index",
    "build_dual",
    "lce_forward",
    "lce_backward",
    "NodeRef",
    "SuffixTree",
    "build_tree",
    "MappabilityResult",
    "ScaledCounter",
    "brute_force",
    "zero_map",
    "at_most_one",
    "run_average",
    "run_treewalk",
    "run_heavypath",
    "choose_algorithm",
    "compute",
]
