"""Hot loops with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports and ``CRITEX_PURE_PYTHON`` is
unset.  Big-integer work always runs in the Python backend because the
compiled one is int64-only.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("CRITEX_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
_impl = _ckernels if _ckernels is not None else _pykernels

DEFAULT_GUARD = 10 ** 7
INT64_SAFE = 2 ** 62


class GuardExceeded(RuntimeError):
    """An enumeration would take more steps than the configured guard."""


def guard_limit() -> int:
    raw = os.environ.get("CRITEX_GUARD")
    return int(float(raw)) if raw else DEFAULT_GUARD


def nb_step(mass, origin, terminus, index, nverts):
    if mass.dtype == np.int64:
        return _impl.nb_step(mass, origin, terminus, index, nverts)
    return _pykernels.nb_step(mass, origin, terminus, index, nverts)


def _guarded(fn, origin, terminus, out_ptr, out_idx, max_len, guard):
    guard = guard_limit() if guard is None else guard
    counts, _ = fn(origin, terminus, out_ptr, out_idx, max_len, guard)
    if counts is None:
        raise GuardExceeded(f"enumeration exceeded {guard} steps "
                            f"(raise CRITEX_GUARD to allow more)")
    return counts


def closed_walk_counts(origin, terminus, out_ptr, out_idx, max_len, guard=None):
    return _guarded(_impl.closed_walk_counts, origin, terminus, out_ptr,
                    out_idx, max_len, guard)


def prime_cycle_counts(origin, terminus, out_ptr, out_idx, max_len, guard=None):
    return _guarded(_impl.prime_cycle_counts, origin, terminus, out_ptr,
                    out_idx, max_len, guard)


def iter_prime_cycles(origin, terminus, out_ptr, out_idx, max_len, guard=None):
    guard = guard_limit() if guard is None else guard
    try:
        yield from _pykernels.iter_prime_cycles(origin, terminus, out_ptr,
                                                out_idx, max_len, guard)
    except OverflowError:
        raise GuardExceeded(f"enumeration exceeded {guard} steps "
                            f"(raise CRITEX_GUARD to allow more)") from None
