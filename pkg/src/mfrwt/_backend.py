"""Kernel backend selection.

The hot quadrature loops live in :mod:`mfrwt.kernels` in two flavours: a
numba ``@njit`` version and a pure-numpy version. Which one the public API
uses is decided once, at import time, from the ``MFRWT_BACKEND``
environment variable:

``auto`` (default)
    numba when it imports, numpy otherwise.
``numba``
    numba, failing loudly if it is missing.
``numpy``
    pure numpy, even when numba is installed.

The choice can be changed at runtime with :func:`set_backend`, which is what
the benchmark script and the backend-parity tests do.
"""

import os

try:
    import numba
    from numba import njit, prange

    # The system TBB is often too old for numba and triggers a warning on the
    # first parallel call; the work-queue layer ships with numba itself.
    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER = "workqueue"
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def decorator(func):
            return func

        return decorator

    def prange(*args):
        return range(*args)


_VALID = ("auto", "numba", "numpy")


def _resolve(name):
    name = (name or "auto").strip().lower()
    if name not in _VALID:
        raise ValueError(f"MFRWT_BACKEND must be one of {_VALID}, got {name!r}")
    if name == "auto":
        return "numba" if NUMBA_AVAILABLE else "numpy"
    if name == "numba" and not NUMBA_AVAILABLE:
        raise ImportError("MFRWT_BACKEND=numba but numba is not installed")
    return name


_active = _resolve(os.environ.get("MFRWT_BACKEND"))


def get_backend():
    """Return the active backend name, ``"numba"`` or ``"numpy"``."""
    return _active


def set_backend(name):
    """Switch the active backend; returns the previous one."""
    global _active
    previous = _active
    _active = _resolve(name)
    return previous


def use_numba():
    return _active == "numba"


def set_threads(count):
    """Limit numba's worker threads (no-op on the numpy backend)."""
    if NUMBA_AVAILABLE and count:
        numba.set_num_threads(max(1, min(int(count), numba.config.NUMBA_NUM_THREADS)))


__all__ = ["NUMBA_AVAILABLE", "njit", "prange", "get_backend", "set_backend", "use_numba", "set_threads"]
