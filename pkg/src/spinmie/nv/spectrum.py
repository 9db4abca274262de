"""ODMR spectrum synthesis and contrast tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from spinmie.errors import NumericError
from spinmie.nv import _kernels
from spinmie.nv.dynamics import (
    _assemble,
    _constrained_matrix,
    build_system,
    photoluminescence,
    steady_state,
)
from spinmie.nv.params import NvModelParams, NvState

TWO_PI = 2.0 * math.pi


@dataclass
class OdmrSpectrum:
    """Photoluminescence sampled against microwave drive frequency."""

    frequencies: np.ndarray          # Hz, strictly increasing
    pl: np.ndarray                   # photons/s (arbitrary normalization)
    params: NvModelParams | None = None

    def __post_init__(self):
        self.frequencies = np.asarray(self.frequencies, dtype=float)
        self.pl = np.asarray(self.pl, dtype=float)
        if self.frequencies.shape != self.pl.shape or self.frequencies.ndim != 1:
            raise ValueError("frequencies and pl must be 1-d arrays of equal length")
        if self.frequencies.size < 2:
            raise ValueError("a spectrum needs at least two samples")
        if not np.all(np.diff(self.frequencies) > 0):
            raise ValueError("frequencies must be strictly increasing")
        if not np.all(self.pl > 0):
            raise ValueError("pl values must be strictly positive")

    @property
    def grid_step(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])


def _sweep_states(params: NvModelParams, omega_mw: np.ndarray) -> np.ndarray:
    """Steady state for every drive frequency; rows are 15-vectors."""
    base = _assemble(params, include_detuning=False)
    a, b, scale = _constrained_matrix(base)
    d12 = (params.omega_12 - omega_mw) / scale
    d13 = (params.omega_13 - omega_mw) / scale
    states = _kernels.sweep_steady(a, d12, d13, b)
    bad = ~np.all(np.isfinite(states), axis=1)
    if np.any(bad):
        f_bad = omega_mw[np.argmax(bad)] / TWO_PI
        raise NumericError(f"steady-state solve failed at drive frequency {f_bad:.6e} Hz")
    return states


def odmr_spectrum(params: NvModelParams, f_start: float, f_stop: float,
                  n_points: int, normalize: bool = False,
                  include_nv0: bool = False) -> OdmrSpectrum:
    """Sweep the drive over ``[f_start, f_stop]`` (Hz) and record steady PL."""
    params.validate()
    if not (f_start < f_stop):
        raise ValueError("f_start must be below f_stop")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    freqs = np.linspace(f_start, f_stop, n_points)
    states = _sweep_states(params, TWO_PI * freqs)
    pl = params.gamma_sp * states[:, 3:6].sum(axis=1)
    if include_nv0:
        pl = pl + params.gamma_sp0 * states[:, 8]
    if normalize:
        pl = pl / pl.max()
    return OdmrSpectrum(freqs, pl, params)


@dataclass(frozen=True)
class ContrastPoint:
    """One row of a contrast table: drive/pump operating point and result."""

    pump_rate: float
    coupling: float
    pl_baseline: float
    pl_resonant: float

    @property
    def contrast(self) -> float:
        return 1.0 - self.pl_resonant / self.pl_baseline


def contrast_vs_coupling(params: NvModelParams, omegas, pump_rates,
                         resonance_freq: float | None = None,
                         include_nv0: bool = False) -> list[ContrastPoint]:
    """Steady-state contrast for every (pump, coupling) combination.

    Contrast is measured against the zero-drive baseline at the same pump
    rate, which is grid-independent: ``1 - PL(resonant drive) / PL(no
    drive)``.  Rows are ordered by (pump, coupling).  The pump-following
    channel rates (ionisation, recombination, neutral-charge pump) are
    re-derived from each swept pump rate.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    pump_rates = np.atleast_1d(np.asarray(pump_rates, dtype=float))
    if omegas.size == 0 or pump_rates.size == 0:
        raise ValueError("omegas and pump_rates must be non-empty")
    if np.any(omegas <= 0) or np.any(pump_rates <= 0):
        raise ValueError("omegas and pump_rates must be positive")
    omega_res = TWO_PI * resonance_freq if resonance_freq is not None else params.omega_12
    rows = []
    for pump in np.sort(pump_rates):
        at_pump = params.replace(pump_rate=pump, omega_mw=omega_res,
                                 nv0_pump_rate=None, gamma_84=None, gamma_85=None,
                                 gamma_86=None, gamma_19=None, gamma_29=None,
                                 gamma_39=None)
        baseline = photoluminescence(
            steady_state(build_system(at_pump.replace(coupling=0.0))),
            at_pump, include_nv0)
        for om in np.sort(omegas):
            resonant = photoluminescence(
                steady_state(build_system(at_pump.replace(coupling=om))),
                at_pump, include_nv0)
            rows.append(ContrastPoint(pump, om, baseline, resonant))
    return rows


def dip_fwhm(spectrum: OdmrSpectrum) -> tuple[float, float]:
    """Width and fractional depth of the deepest dip, by linear interpolation.

    Returns ``(fwhm_hz, depth_fraction)``.  Assumes a single-dip spectrum;
    for split spectra fit a double Lorentzian instead.
    """
    f, pl = spectrum.frequencies, spectrum.pl
    baseline = float(pl.max())
    i_min = int(np.argmin(pl))
    depth = baseline - pl[i_min]
    if depth <= 0:
        return 0.0, 0.0
    half = baseline - depth / 2.0
    below = pl < half
    if not below[i_min]:
        return 0.0, depth / baseline
    i_lo = i_min
    while i_lo > 0 and below[i_lo - 1]:
        i_lo -= 1
    i_hi = i_min
    while i_hi < len(f) - 1 and below[i_hi + 1]:
        i_hi += 1
    if i_lo == 0 or i_hi == len(f) - 1:
        raise NumericError("dip half-maximum crossings fall outside the sweep window")
    f_lo = np.interp(half, [pl[i_lo], pl[i_lo - 1]], [f[i_lo], f[i_lo - 1]])
    f_hi = np.interp(half, [pl[i_hi], pl[i_hi + 1]], [f[i_hi], f[i_hi + 1]])
    return float(f_hi - f_lo), float(depth / baseline)
