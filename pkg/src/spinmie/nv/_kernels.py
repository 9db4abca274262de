"""JIT kernels for the frequency sweep and the fixed-step propagator.

Each kernel has a vectorized numpy twin living next to its dispatcher; the
numba versions only exist when the JIT path is enabled (see
:mod:`spinmie._accel`).
"""

import numpy as np

from spinmie import _accel


def _sweep_steady_impl(base, d12, d13, b):
    """Solve the constrained steady state for every detuning pair.

    ``base`` is the rate-normalized generator with the drive-detuning entries
    zeroed and row 0 already replaced by the population-sum constraint.
    Returns an array of state vectors, one row per frequency.
    """
    n = d12.size
    out = np.empty((n, 15))
    for i in range(n):
        a = base.copy()
        a[9, 10] += d12[i]
        a[10, 9] -= d12[i]
        a[11, 12] += d13[i]
        a[12, 11] -= d13[i]
        out[i] = np.linalg.solve(a, b)
    return out


def _evolve_steps_impl(step_matrix, x0, n_steps):
    """Apply the one-step propagator ``n_steps`` times."""
    x = x0.copy()
    for _ in range(n_steps):
        x = step_matrix @ x
    return x


sweep_steady_numba = None
evolve_steps_numba = None
if _accel.JIT_ENABLED:
    _njit = _accel.jit(cache=True)
    sweep_steady_numba = _njit(_sweep_steady_impl)
    evolve_steps_numba = _njit(_evolve_steps_impl)


def sweep_steady_numpy(base, d12, d13, b):
    """Batched-LAPACK version of the steady-state sweep."""
    n = d12.size
    stack = np.broadcast_to(base, (n, 15, 15)).copy()
    stack[:, 9, 10] += d12
    stack[:, 10, 9] -= d12
    stack[:, 11, 12] += d13
    stack[:, 12, 11] -= d13
    rhs = np.broadcast_to(b, (n, 15))
    return np.linalg.solve(stack, rhs)


def evolve_steps_numpy(step_matrix, x0, n_steps):
    x = x0.copy()
    for _ in range(n_steps):
        x = step_matrix @ x
    return x


def sweep_steady(base, d12, d13, b):
    if sweep_steady_numba is not None:
        return sweep_steady_numba(base, d12, d13, b)
    return sweep_steady_numpy(base, d12, d13, b)


def evolve_steps(step_matrix, x0, n_steps):
    if evolve_steps_numba is not None:
        return evolve_steps_numba(step_matrix, x0, n_steps)
    return evolve_steps_numpy(step_matrix, x0, n_steps)
