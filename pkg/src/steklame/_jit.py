"""Numba on/off switch.

The accelerated kernels are selected at import time: set STEKLAME_NUMBA=0
(or "off"/"false") to force the pure-numpy fallback, e.g. for debugging or
on machines where numba is unavailable.  When numba cannot be imported the
fallback is used silently.
"""

import os

_flag = os.environ.get("STEKLAME_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "off", "false", "no")

if _want_numba:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

if not HAVE_NUMBA:

    def njit(*args, **kwargs):  # noqa: D103 - identity decorator stand-in
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


def set_thread_cap(n):
    """Cap numba worker threads; no-op on the numpy lane."""
    if not HAVE_NUMBA or n is None:
        return
    try:
        import numba

        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
    except (ImportError, ValueError):
        pass
