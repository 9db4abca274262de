"""Sphere scattering configuration and multipole coefficients.

The four coefficient families follow the plane-wave expansion used throughout
:mod:`spinmie.mie.fields`: ``a``-type terms multiply the odd magnetic-type
harmonics and ``b``-type terms the even electric-type harmonics, internal
coefficients weight regular (``j``) radial functions and external ones the
outgoing (``h^(1)``) functions.  Magnetic resonances are minima of the shared
``a``-denominator, exposed as :func:`characteristic_fn`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from spinmie.mie.bessel import (
    h1_ladder,
    jn_ladder,
    riccati_h1_derivative_ladder,
    riccati_j_derivative_ladder,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MieConfig:
    """Sphere, environment and wave parameters for one scattering problem.

    ``n_max`` is the series truncation order; leave ``None`` for the usual
    size-parameter heuristic ``ceil(rho + 4 rho^(1/3) + 2)`` with a floor of
    10.
    """

    n_sphere: complex            # refractive index of the sphere (may be lossy)
    n_medium: float = 1.0        # real refractive index of the environment
    mu_sphere: float = 1.0       # relative permeabilities
    mu_medium: float = 1.0
    radius: float = 0.01         # m
    frequency: float = 2.87e9    # Hz
    n_max: int | None = None

    def __post_init__(self):
        if self.n_sphere.real <= 0:
            raise ValueError("Re(n_sphere) must be positive")
        if self.n_medium <= 0:
            raise ValueError("n_medium must be positive and real")
        if self.mu_sphere <= 0 or self.mu_medium <= 0:
            raise ValueError("permeabilities must be positive")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.frequency <= 0:
            raise ValueError("frequency must be positive")
        if self.n_max is not None and self.n_max < 1:
            raise ValueError("n_max must be at least 1")

    @property
    def wavelength(self) -> float:
        """Vacuum wavelength, m."""
        return SPEED_OF_LIGHT / self.frequency

    @property
    def k_medium(self) -> float:
        return TWO_PI * self.n_medium * self.frequency / SPEED_OF_LIGHT

    @property
    def k_sphere(self) -> complex:
        return TWO_PI * complex(self.n_sphere) * self.frequency / SPEED_OF_LIGHT

    @property
    def size_parameter(self) -> float:
        """rho = k_medium * radius."""
        return self.k_medium * self.radius

    @property
    def relative_index(self) -> complex:
        """N = n_sphere / n_medium."""
        return complex(self.n_sphere) / self.n_medium

    def resolved_n_max(self) -> int:
        if self.n_max is not None:
            return self.n_max
        rho = self.size_parameter
        return max(10, int(math.ceil(rho + 4.0 * rho ** (1.0 / 3.0) + 2.0)))


@dataclass(frozen=True)
class MieCoefficients:
    """Internal and external multipole amplitudes at one order."""

    order: int
    a_int: complex
    b_int: complex
    a_ext: complex
    b_ext: complex


def _ingredients(n_max: int, rho, relative_index: complex):
    """Radial function values entering every coefficient at orders 0..n_max."""
    rho = np.asarray(rho, dtype=float)
    x_in = relative_index * rho
    j_out = jn_ladder(n_max, rho)
    h_out = h1_ladder(n_max, rho)
    j_in = jn_ladder(n_max, x_in)
    dpsi_out = riccati_j_derivative_ladder(n_max, rho, jl=j_out)
    dxi_out = riccati_h1_derivative_ladder(n_max, rho, hl=h_out)
    dpsi_in = riccati_j_derivative_ladder(n_max, x_in, jl=j_in)
    return j_out, h_out, j_in, dpsi_out, dxi_out, dpsi_in


def characteristic_fn(order: int, rho, cfg: MieConfig):
    """Shared denominator of the ``a``-type coefficients, as a function of rho.

    Magnetic (transverse-electric) morphological resonances are the local
    minima of its modulus along real rho.  With no index or permeability
    contrast it reduces to a Wronskian and never vanishes.
    """
    if order < 1:
        raise ValueError("multipole order must be >= 1")
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho_arr <= 0):
        raise ValueError("rho must be positive")
    n = order
    mu1, mu2 = cfg.mu_sphere, cfg.mu_medium
    _, h_out, j_in, _, dxi_out, dpsi_in = _ingredients(n, rho_arr, cfg.relative_index)
    d = mu1 * j_in[n] * dxi_out[n] - mu2 * h_out[n] * dpsi_in[n]
    return complex(d[0]) if np.isscalar(rho) or np.asarray(rho).ndim == 0 else d


def coefficient_table(cfg: MieConfig, n_max: int | None = None):
    """Coefficient arrays for orders ``1..n_max`` (index 0 is order 1).

    Returns ``(a_int, b_int, a_ext, b_ext)``.
    """
    n_max = cfg.resolved_n_max() if n_max is None else n_max
    rho = cfg.size_parameter
    mu1, mu2 = cfg.mu_sphere, cfg.mu_medium
    relindex = cfg.relative_index
    j_out, h_out, j_in, dpsi_out, dxi_out, dpsi_in = _ingredients(n_max, rho, relindex)
    j_out, h_out, j_in = j_out[1:, 0], h_out[1:, 0], j_in[1:, 0]
    dpsi_out, dxi_out, dpsi_in = dpsi_out[1:, 0], dxi_out[1:, 0], dpsi_in[1:, 0]

    den_a = mu1 * j_in * dxi_out - mu2 * h_out * dpsi_in
    den_b = mu2 * relindex**2 * j_in * dxi_out - mu1 * h_out * dpsi_in
    a_int = mu1 * (dxi_out * j_out - dpsi_out * h_out) / den_a
    b_int = mu1 * relindex * (dxi_out * j_out - dpsi_out * h_out) / den_b
    a_ext = -(mu1 * j_in * dpsi_out - mu2 * j_out * dpsi_in) / den_a
    b_ext = -(mu1 * j_out * dpsi_in - mu2 * relindex**2 * j_in * dpsi_out) / (
        mu1 * h_out * dpsi_in - mu2 * relindex**2 * j_in * dxi_out)
    return a_int, b_int, a_ext, b_ext


def mie_coefficients(order: int, cfg: MieConfig) -> MieCoefficients:
    """Internal and external coefficients at a single multipole order."""
    if order < 1:
        raise ValueError("multipole order must be >= 1")
    a_int, b_int, a_ext, b_ext = coefficient_table(cfg, n_max=order)
    # |coef| > 1e12 is exactly |denominator| < 1e-12 * |numerator|.
    if max(abs(a_int[-1]), abs(b_int[-1])) > 1e12:
        warnings.warn(
            f"order-{order} coefficients evaluated within 1e-12 of a resonance "
            "pole; values may be unreliable", RuntimeWarning, stacklevel=2)
    return MieCoefficients(order, complex(a_int[-1]), complex(b_int[-1]),
                           complex(a_ext[-1]), complex(b_ext[-1]))
