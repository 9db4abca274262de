"""Generator assembly and linear solvers for the nine-level model.

The equations of motion close on 15 real variables (nine populations plus
real/imaginary parts of the three ground-spin coherences), so the whole model
is one real matrix ``M`` with ``state' = M @ state``.  The drive frequency
enters only through the detunings in four matrix entries, which is what makes
frequency sweeps cheap.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from spinmie.errors import NumericError, SingularSystemError
from spinmie.nv import _kernels
from spinmie.nv.params import (
    IDX_U12,
    IDX_U13,
    IDX_U23,
    IDX_V12,
    IDX_V13,
    IDX_V23,
    STATE_DIM,
    NvModelParams,
    NvState,
)

# TR-BDF2 stage fraction (L-stable one-step scheme).
_TRBDF2_GAMMA = 2.0 - math.sqrt(2.0)

# Soft cap on the number of propagator applications per call.
_MAX_STEPS = 50_000_000


@dataclass(frozen=True)
class LinearDynamics:
    """The assembled 15x15 real generator together with its parameters."""

    params: NvModelParams
    generator: np.ndarray

    @property
    def scale(self) -> float:
        """Largest rate in the generator; used to normalize linear solves."""
        return float(np.abs(self.generator).max())

    def with_drive_frequency(self, omega_mw: float) -> "LinearDynamics":
        return build_system(self.params.replace(omega_mw=omega_mw))


def _assemble(params: NvModelParams, include_detuning: bool = True) -> np.ndarray:
    p = params
    m = np.zeros((STATE_DIM, STATE_DIM))
    pump, om = p.pump_rate, p.coupling

    # populations
    m[0, IDX_V12] += 2 * om
    m[0, IDX_V13] += 2 * om
    m[0, 0] -= pump + p.gamma_21 + p.gamma_31
    m[0, 1] += p.gamma_12
    m[0, 2] += p.gamma_13
    m[0, 3] += p.gamma_sp
    m[0, 6] += p.gamma_17
    m[0, 8] += p.gamma_19

    m[1, IDX_V12] -= 2 * om
    m[1, 0] += p.gamma_21
    m[1, 1] -= pump + p.gamma_12
    m[1, 4] += p.gamma_sp
    m[1, 6] += p.gamma_27
    m[1, 8] += p.gamma_29

    m[2, IDX_V13] -= 2 * om
    m[2, 0] += p.gamma_31
    m[2, 2] -= pump + p.gamma_13
    m[2, 5] += p.gamma_sp
    m[2, 6] += p.gamma_37
    m[2, 8] += p.gamma_39

    m[3, 0] += pump
    m[3, 3] -= p.gamma_sp + p.gamma_74 + p.gamma_84
    m[4, 1] += pump
    m[4, 4] -= p.gamma_sp + p.gamma_75 + p.gamma_85
    m[5, 2] += pump
    m[5, 5] -= p.gamma_sp + p.gamma_76 + p.gamma_86

    m[6, 3] += p.gamma_74
    m[6, 4] += p.gamma_75
    m[6, 5] += p.gamma_76
    m[6, 6] -= p.gamma_17 + p.gamma_27 + p.gamma_37

    m[7, 3] += p.gamma_84
    m[7, 4] += p.gamma_85
    m[7, 5] += p.gamma_86
    m[7, 7] -= p.nv0_pump_rate
    m[7, 8] += p.gamma_sp0

    m[8, 7] += p.nv0_pump_rate
    m[8, 8] -= p.gamma_sp0 + p.gamma_19 + p.gamma_29 + p.gamma_39

    # coherences; each decay bracket multiplies its own coherence
    k12 = p.dephasing_rate + p.gamma_12 + p.gamma_21 + 2 * pump
    k13 = p.dephasing_rate + p.gamma_13 + p.gamma_31 + 2 * pump
    k23 = 2 * p.dephasing_rate + p.gamma_12 + p.gamma_13 + 2 * pump
    split = p.omega_12 - p.omega_13

    m[IDX_U12, IDX_V23] += om
    m[IDX_U12, IDX_U12] -= k12 / 2
    m[IDX_V12, IDX_U23] += om
    m[IDX_V12, 1] += om
    m[IDX_V12, 0] -= om
    m[IDX_V12, IDX_V12] -= k12 / 2

    m[IDX_U13, IDX_V23] -= om
    m[IDX_U13, IDX_U13] -= k13 / 2
    m[IDX_V13, IDX_U23] += om
    m[IDX_V13, 2] += om
    m[IDX_V13, 0] -= om
    m[IDX_V13, IDX_V13] -= k13 / 2

    m[IDX_U23, IDX_V12] -= om
    m[IDX_U23, IDX_V13] -= om
    m[IDX_U23, IDX_V23] -= split
    m[IDX_U23, IDX_U23] -= k23 / 2
    m[IDX_V23, IDX_U13] += om
    m[IDX_V23, IDX_U12] -= om
    m[IDX_V23, IDX_U23] += split
    m[IDX_V23, IDX_V23] -= k23 / 2

    if include_detuning:
        _add_detuning(m, p.detuning_12, p.detuning_13)
    return m


def _add_detuning(m: np.ndarray, d12: float, d13: float):
    m[IDX_U12, IDX_V12] += d12
    m[IDX_V12, IDX_U12] -= d12
    m[IDX_U13, IDX_V13] += d13
    m[IDX_V13, IDX_U13] -= d13


def build_system(params: NvModelParams) -> LinearDynamics:
    """Assemble the real 15x15 generator for the given parameters."""
    params.validate()
    return LinearDynamics(params, _assemble(params))


def _constrained_matrix(generator: np.ndarray):
    """Rate-normalized generator with row 0 replaced by the sum constraint."""
    scale = float(np.abs(generator).max())
    if scale == 0.0 or not math.isfinite(scale):
        raise SingularSystemError("generator has no finite nonzero rates")
    a = generator / scale
    a[0, :] = 0.0
    a[0, :9] = 1.0
    b = np.zeros(STATE_DIM)
    b[0] = 1.0
    return a, b, scale


def steady_state(system: LinearDynamics, residual_tol: float = 1e-9,
                 clamp_tol: float = 1e-10) -> NvState:
    """Solve ``M x = 0`` with the populations normalized to sum 1.

    Row 0 of the generator is replaced by the population-sum constraint (the
    generator is singular by construction, trace preservation makes any one
    population row redundant).  The residual is checked on the
    rate-normalized generator ``M / max|M|`` so ``residual_tol`` is
    scale-free.
    """
    a, b, scale = _constrained_matrix(system.generator)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"constrained steady-state system is singular: {exc}") from exc
    residual = float(np.abs(system.generator @ x).max()) / scale
    if not np.all(np.isfinite(x)) or residual > residual_tol:
        raise SingularSystemError(
            f"steady-state residual {residual:.3e} exceeds {residual_tol:.1e}; "
            "parameters are degenerate")
    negative = x[:9] < 0
    if np.any(negative):
        worst = x[:9].min()
        if worst < -clamp_tol:
            raise NumericError(
                f"steady-state population {worst:.3e} below -{clamp_tol:.1e}")
        warnings.warn(
            f"clamped {int(negative.sum())} steady-state population(s) in "
            f"[{worst:.1e}, 0) to zero", RuntimeWarning, stacklevel=2)
        x[:9] = np.where(negative, 0.0, x[:9])
        x[:9] /= x[:9].sum()
    return NvState.from_vector(x)


def _trbdf2_step_matrix(generator: np.ndarray, dt: float) -> np.ndarray:
    """One-step TR-BDF2 propagator for the constant-coefficient system.

    L-stable, second order; its fixed point is the exact steady state and it
    preserves the population sum identically (the constituent rational
    factors all evaluate to 1 on the conserved direction).
    """
    g = _TRBDF2_GAMMA
    eye = np.eye(generator.shape[0])
    a1 = eye - (g * dt / 2) * generator
    b1 = eye + (g * dt / 2) * generator
    a2 = eye - ((1 - g) / (2 - g)) * dt * generator
    c1 = 1.0 / (g * (2 - g))
    c2 = (1 - g) ** 2 / (g * (2 - g))
    try:
        inner = np.linalg.solve(a1, b1)
        return np.linalg.solve(a2, c1 * inner - c2 * eye)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - dt guard below
        raise NumericError(f"propagator factorization failed: {exc}") from exc


def time_evolve(system: LinearDynamics, initial: NvState, t_final: float,
                dt: float) -> NvState:
    """Integrate ``state' = M state`` to ``t_final`` with fixed-step TR-BDF2.

    The scheme is implicit and L-stable, so ``dt`` may be far larger than the
    fastest rate in the system; it controls transient accuracy only.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    x = initial.to_vector()
    if t_final == 0:
        return NvState.from_vector(x)
    n_steps = int(math.ceil(t_final / dt - 1e-12))
    if n_steps > _MAX_STEPS:
        raise NumericError(
            f"step size underflow: {n_steps} steps requested (> {_MAX_STEPS}); "
            "increase dt")
    n_full = n_steps - 1
    if n_full > 0:
        step = _trbdf2_step_matrix(system.generator, dt)
        x = _kernels.evolve_steps(step, x, n_full)
    dt_last = t_final - n_full * dt
    x = _trbdf2_step_matrix(system.generator, dt_last) @ x
    if not np.all(np.isfinite(x)):
        raise NumericError("time evolution produced non-finite state")
    return NvState.from_vector(x)


def photoluminescence(state: NvState, params: NvModelParams,
                      include_nv0: bool = False) -> float:
    """Total radiative decay rate of the optically excited levels.

    Red emission is the excited-triplet decay ``gamma_sp * (p4 + p5 + p6)``;
    ``include_nv0`` adds the neutral-charge emission ``gamma_sp0 * p9``.
    """
    p = state.populations
    pl = params.gamma_sp * (p[3] + p[4] + p[5])
    if include_nv0:
        pl += params.gamma_sp0 * p[8]
    return float(pl)
