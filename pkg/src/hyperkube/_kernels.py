"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_purepy`` module. Set ``HYPERKUBE_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from hyperkube import _purepy

if os.environ.get("HYPERKUBE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _purepy
else:
    try:
        from hyperkube import _speedups as _impl
    except ImportError:
        _impl = _purepy

BACKEND = "python" if _impl is _purepy else "cython"

fnv1a64 = _impl.fnv1a64
popcount = _impl.popcount
hamming = _impl.hamming
greedy_path = _impl.greedy_path
free_positions = _impl.free_positions
sbt_children = _impl.sbt_children
sbt_preorder = _impl.sbt_preorder


def available_backends():
    """Map backend name to kernel module for every backend that imports."""
    backends = {"python": _purepy}
    try:
        from hyperkube import _speedups
    except ImportError:
        pass
    else:
        backends["cython"] = _speedups
    return backends
