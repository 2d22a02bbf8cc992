"""Kernel backend selection.

The compiled extension is preferred; set ``TRIMDIST_PURE_PYTHON=1`` to force
the numpy fallback (useful for benchmarking and debugging).
"""

import os

from trimdist import _pykernels

if os.environ.get("TRIMDIST_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from trimdist import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

prefix_min = _impl.prefix_min
suffix_max = _impl.suffix_max
constrained_pair_max = _impl.constrained_pair_max
reachable = _impl.reachable


def prefix_max(left, right):
    at_left, at_right = prefix_min(-left, -right)
    return -at_left, -at_right


def suffix_min(left, right):
    from_left, from_right = suffix_max(-left, -right)
    return -from_left, -from_right
