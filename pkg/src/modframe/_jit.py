"""Numba switch.

Set ``MODFRAME_DISABLE_JIT=1`` to force the pure-numpy kernels, e.g. on
platforms without numba or when debugging a kernel.
"""

import os

_disabled = os.environ.get("MODFRAME_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_JIT = HAS_NUMBA and not _disabled


def njit(func):
    """Compile ``func`` in nopython mode when numba is usable, else return it unchanged."""
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True)(func)
