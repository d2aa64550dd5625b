"""Optional numba acceleration.

Set ``ROSESPEC_JIT=0`` to run every kernel as plain Python on numpy arrays.
The flag is read once, at import time.
"""
import os

_flag = os.environ.get("ROSESPEC_JIT", "1").strip().lower()
JIT_ENABLED = _flag not in ("0", "false", "no", "off")

if JIT_ENABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover
        JIT_ENABLED = False

if JIT_ENABLED:
    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        kwargs.setdefault("nogil", True)
        return numba.njit(*args, **kwargs)
else:
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
