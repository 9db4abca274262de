"""Magnetic morphological-resonance search over the size parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spinmie.errors import ResonanceSearchError
from spinmie.mie.coefficients import MieConfig, characteristic_fn

TWO_PI = 2.0 * math.pi

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ResonanceResult:
    """One minimum of ``|D_n(rho)|`` and the sphere size it implies."""

    order: int
    mode_index: int      # 1-based, ascending rho
    rho_res: float       # size parameter at the minimum
    radius: float        # m, for the queried frequency and medium
    alpha: float         # rho_res; circumference / wavelength design constant
    residual: float      # |D_n| at the minimum


def golden_minimize(fun, a: float, b: float, xtol: float = 1e-8) -> float:
    """Golden-section search for the minimum of a unimodal scalar function."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
    return (a + b) / 2.0


def find_resonances(order: int, cfg: MieConfig, rho_min: float, rho_max: float,
                    mode_count: int = 1, grid_points: int = 4000) -> list[ResonanceResult]:
    """Locate the first ``mode_count`` magnetic resonances of one order.

    Scans ``|D_n|`` on a uniform rho grid, refines every interior local
    minimum by golden-section search to ``|d rho| < 1e-8``, and converts each
    to a physical radius via ``rho * wavelength / (2 pi n_medium)``.
    """
    if not (0 < rho_min < rho_max):
        raise ValueError("require 0 < rho_min < rho_max")
    if mode_count < 1:
        raise ValueError("mode_count must be at least 1")
    grid_points = max(grid_points, 2000)
    rho = np.linspace(rho_min, rho_max, grid_points)
    mag = np.abs(characteristic_fn(order, rho, cfg))

    interior = (mag[1:-1] < mag[:-2]) & (mag[1:-1] <= mag[2:])
    candidates = np.flatnonzero(interior) + 1

    scalar_mag = lambda r: abs(characteristic_fn(order, float(r), cfg))
    results = []
    for idx in candidates:
        rho_star = golden_minimize(scalar_mag, rho[idx - 1], rho[idx + 1], xtol=1e-8)
        residual = scalar_mag(rho_star)
        radius = rho_star * cfg.wavelength / (TWO_PI * cfg.n_medium)
        results.append(ResonanceResult(order, len(results) + 1, rho_star,
                                       radius, rho_star, residual))
        if len(results) == mode_count:
            return results
    raise ResonanceSearchError(
        f"found {len(results)} local minima of |D_{order}| in "
        f"[{rho_min}, {rho_max}], needed {mode_count}: "
        + (", ".join(f"rho={r.rho_res:.6f}" for r in results) or "none"))
