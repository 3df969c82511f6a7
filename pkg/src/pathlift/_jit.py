"""Optional numba dependency.

Set ``PATHLIFT_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable.
"""
import os

DISABLED = os.environ.get("PATHLIFT_DISABLE_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on")

try:
    if DISABLED:
        raise ImportError("numba disabled by PATHLIFT_DISABLE_NUMBA")
    from numba import njit as _njit
    HAVE_NUMBA = True

    def jit(fn):
        return _njit(cache=True, nogil=True)(fn)

except ImportError:
    HAVE_NUMBA = False

    def jit(fn):
        return fn
