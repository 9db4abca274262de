"""Parameter and state containers for the nine-level NV model.

Level numbering used throughout:

=====  =============================================
1,2,3  ground-state triplet (ms = 0, -1, +1)
4,5,6  excited-state triplet (pumped from 1, 2, 3)
7      effective singlet (shelving) state
8,9    neutral-charge ground / excited states
=====  =============================================

All rates and angular frequencies are in rad/s.  Several rates follow the
optical pump rate by fixed literature ratios; leave those fields ``None`` to
get the scaled defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

TWO_PI = 2.0 * math.pi

# Boltzmann constant / reduced Planck constant ratio, K^-1 s^-1
_KB_OVER_HBAR = 1.380649e-23 / 1.054571817e-34

# Literature defaults for the fixed decay channels (rad/s).
GAMMA_SP_DEFAULT = TWO_PI * 66.16e6
GAMMA_SP0_DEFAULT = TWO_PI * 50e6
GAMMA_74_DEFAULT = TWO_PI * 11.1e6
GAMMA_75_DEFAULT = TWO_PI * 91.8e6
GAMMA_76_DEFAULT = TWO_PI * 91.8e6
GAMMA_17_DEFAULT = TWO_PI * 4.87e6
GAMMA_27_DEFAULT = TWO_PI * 2.04e6
GAMMA_37_DEFAULT = TWO_PI * 2.04e6
# Longitudinal spin relaxation at 300 K: gamma_s (1 + nbar) and gamma_s nbar.
GAMMA_S_DEFAULT = TWO_PI * 0.157
GAMMA_12_DEFAULT = TWO_PI * 344.96
GAMMA_21_DEFAULT = TWO_PI * 343.8

# Pump-rate ratios for the charge-state channels.
NV0_PUMP_RATIO = 1.3
IONISATION_RATIO = 0.037
RECOMBINATION_RATIO = 0.08


@dataclass(frozen=True)
class NvModelParams:
    """All rates and frequencies of the nine-level model.

    ``ionisation``, ``recombination`` and ``nv0_pump_rate`` default to fixed
    multiples of ``pump_rate`` (0.037, 0.08 and 1.3 respectively);
    ``gamma_13``/``gamma_31`` default to the ``gamma_12``/``gamma_21`` values
    (both spin branches sit at nearly the same transition energy, so the
    thermal occupation is indistinguishable).  Supplying ``temperature``
    recomputes the thermal rates from ``gamma_s`` instead of using the fixed
    300 K defaults.
    """

    pump_rate: float = TWO_PI * 1e6
    dephasing_rate: float = TWO_PI * 1e6
    omega_12: float = TWO_PI * 2.87e9
    omega_13: float = TWO_PI * 2.87e9
    omega_mw: float = TWO_PI * 2.87e9
    coupling: float = 0.0
    gamma_sp: float = GAMMA_SP_DEFAULT
    gamma_sp0: float = GAMMA_SP0_DEFAULT
    nv0_pump_rate: float | None = None
    gamma_74: float = GAMMA_74_DEFAULT
    gamma_75: float = GAMMA_75_DEFAULT
    gamma_76: float = GAMMA_76_DEFAULT
    gamma_17: float = GAMMA_17_DEFAULT
    gamma_27: float = GAMMA_27_DEFAULT
    gamma_37: float = GAMMA_37_DEFAULT
    gamma_84: float | None = None
    gamma_85: float | None = None
    gamma_86: float | None = None
    gamma_19: float | None = None
    gamma_29: float | None = None
    gamma_39: float | None = None
    gamma_12: float = GAMMA_12_DEFAULT
    gamma_21: float = GAMMA_21_DEFAULT
    gamma_13: float | None = None
    gamma_31: float | None = None
    gamma_s: float = GAMMA_S_DEFAULT
    temperature: float | None = None

    def __post_init__(self):
        resolve = object.__setattr__
        if self.nv0_pump_rate is None:
            resolve(self, "nv0_pump_rate", NV0_PUMP_RATIO * self.pump_rate)
        for name in ("gamma_84", "gamma_85", "gamma_86"):
            if getattr(self, name) is None:
                resolve(self, name, IONISATION_RATIO * self.pump_rate)
        for name in ("gamma_19", "gamma_29", "gamma_39"):
            if getattr(self, name) is None:
                resolve(self, name, RECOMBINATION_RATIO * self.pump_rate)
        if self.temperature is not None:
            nbar = self.thermal_occupancy(self.temperature)
            resolve(self, "gamma_12", self.gamma_s * (1.0 + nbar))
            resolve(self, "gamma_21", self.gamma_s * nbar)
        if self.gamma_13 is None:
            resolve(self, "gamma_13", self.gamma_12)
        if self.gamma_31 is None:
            resolve(self, "gamma_31", self.gamma_21)
        self.validate()

    def thermal_occupancy(self, temperature: float) -> float:
        """Bose occupation of the spin transition at the given temperature."""
        if temperature <= 0:
            raise ValueError("temperature must be positive (kelvin)")
        return 1.0 / math.expm1(self.omega_12 / (_KB_OVER_HBAR * temperature))

    def validate(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if not math.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value!r}")
        for name in ("omega_12", "omega_13", "omega_mw"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for f in fields(self):
            if f.name in ("temperature",) or f.name.startswith("omega_"):
                continue
            value = getattr(self, f.name)
            if value < 0:
                raise ValueError(f"rate {f.name} must be non-negative, got {value!r}")

    @property
    def detuning_12(self) -> float:
        return self.omega_12 - self.omega_mw

    @property
    def detuning_13(self) -> float:
        return self.omega_13 - self.omega_mw

    def replace(self, **changes) -> "NvModelParams":
        return replace(self, **changes)


# Layout of the real 15-component state vector: nine populations followed by
# (Re, Im) of the three ground-spin coherences.
IDX_U12, IDX_V12 = 9, 10
IDX_U13, IDX_V13 = 11, 12
IDX_U23, IDX_V23 = 13, 14
STATE_DIM = 15


@dataclass
class NvState:
    """Populations of the nine levels plus the three spin coherences."""

    populations: np.ndarray
    c12: complex = 0.0j
    c13: complex = 0.0j
    c23: complex = 0.0j

    def __post_init__(self):
        self.populations = np.asarray(self.populations, dtype=float)
        if self.populations.shape != (9,):
            raise ValueError("populations must have shape (9,)")

    @classmethod
    def ground(cls) -> "NvState":
        """All population in level 1 (ms = 0 ground state)."""
        p = np.zeros(9)
        p[0] = 1.0
        return cls(p)

    @classmethod
    def from_vector(cls, x) -> "NvState":
        x = np.asarray(x, dtype=float)
        if x.shape != (STATE_DIM,):
            raise ValueError(f"state vector must have shape ({STATE_DIM},)")
        return cls(
            x[:9].copy(),
            complex(x[IDX_U12], x[IDX_V12]),
            complex(x[IDX_U13], x[IDX_V13]),
            complex(x[IDX_U23], x[IDX_V23]),
        )

    def to_vector(self) -> np.ndarray:
        x = np.empty(STATE_DIM)
        x[:9] = self.populations
        x[IDX_U12], x[IDX_V12] = self.c12.real, self.c12.imag
        x[IDX_U13], x[IDX_V13] = self.c13.real, self.c13.imag
        x[IDX_U23], x[IDX_V23] = self.c23.real, self.c23.imag
        return x

    def validate(self, tol: float = 1e-7):
        if not np.all(np.isfinite(self.populations)):
            raise ValueError("populations must be finite")
        if abs(self.populations.sum() - 1.0) > tol:
            raise ValueError(f"populations must sum to 1 within {tol}")
        if np.any(self.populations < -tol) or np.any(self.populations > 1 + tol):
            raise ValueError("populations must lie in [0, 1]")
        for name in ("c12", "c13", "c23"):
            if abs(getattr(self, name)) > 1 + tol:
                raise ValueError(f"|{name}| must not exceed 1")
