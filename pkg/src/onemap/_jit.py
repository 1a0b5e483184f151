"""Kernel compilation switch.

Hot loops are written once, over plain numpy arrays, and compiled with
numba when available. Setting ``ONEMAP_DISABLE_JIT=1`` before import runs
the very same functions as ordinary Python on numpy arrays; this is the
reference path used to cross-check the compiled kernels.
"""
import logging
import os

__all__ = ["JIT_ENABLED", "njit"]

_FLAG = os.environ.get("ONEMAP_DISABLE_JIT", "").strip().lower()

try:
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

JIT_ENABLED = _HAVE_NUMBA and _FLAG not in {"1", "true", "yes", "on"}


def njit(func):
    """Compile ``func`` in nopython mode, or return it untouched."""
    if JIT_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    return func
