"""Numba detection and the env switch for the pure-numpy fallback.

The package runs identically without numba; JIT kernels only shortcut the
per-point / per-frequency inner loops.  ``SPINMIE_NO_NUMBA=1`` (or any value
other than ``0``/empty) forces the numpy code paths even when numba is
installed, which is also what ``benchmarks/bench_kernels.py`` compares.
"""

import os

_ENV_FLAG = "SPINMIE_NO_NUMBA"


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def jit_enabled() -> bool:
    """True when JIT kernels should be used (numba importable, not disabled)."""
    if os.environ.get(_ENV_FLAG, "").strip() not in ("", "0"):
        return False
    return numba_available()


JIT_ENABLED = jit_enabled()


def jit(**kwargs):
    """Return ``numba.njit(**kwargs)`` or ``None`` when the JIT path is off.

    Kernel modules use this as::

        _compiled = None
        if _accel.JIT_ENABLED:
            _compiled = _accel.jit(cache=True)(_kernel_impl)
    """
    if not numba_available():
        return None
    from numba import njit

    return njit(**kwargs)
