"""Multipole field evaluation inside and outside the sphere.

The expansions use the m=1 odd/even vector spherical harmonics generated by
``sin/cos(phi) P_n^1(cos theta) z_n(kr)``; their components reduce to the
angular functions ``pi_n = P_n^1/sin(theta)`` and ``tau_n = dP_n^1/d(theta)``
evaluated by upward recurrence (which also supplies the correct finite limits
on the polar axis).  The external field is the incident x-polarized,
z-propagating plane wave plus the outgoing scattered series; the internal
field is the regular series.  Time convention ``exp(-i omega t)`` at t = 0;
E is per unit incident amplitude (V/m), H in A/m per the same unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import mu_0 as MU_0

from spinmie import _accel
from spinmie.errors import NumericError
from spinmie.mie import _kernels
from spinmie.mie.bessel import (
    h1_ladder,
    jn_ladder,
    riccati_h1_derivative_ladder,
    riccati_j_derivative_ladder,
)
from spinmie.mie.coefficients import MieConfig, coefficient_table

TWO_PI = 2.0 * math.pi

_PLANES = ("xy", "xz", "yz")


@dataclass(frozen=True)
class FieldSample:
    """E and H at one point, in the spherical basis (r_hat, theta_hat, phi_hat)."""

    r: float
    theta: float
    phi: float
    e_field: np.ndarray   # complex (3,)
    h_field: np.ndarray   # complex (3,)


@dataclass(frozen=True)
class FieldMap:
    """|E| and |H| rasterized over an axis-aligned plane through the origin."""

    plane: str            # 'xy', 'xz' or 'yz'
    u: np.ndarray         # first in-plane axis, m
    v: np.ndarray         # second in-plane axis, m
    abs_e: np.ndarray     # (len(v), len(u))
    abs_h: np.ndarray


def angular_pi_tau(n_max: int, cos_theta):
    """Angular functions ``pi_n`` and ``tau_n`` for orders ``0..n_max``."""
    mu = np.atleast_1d(np.asarray(cos_theta, dtype=float))
    pi = np.zeros((n_max + 1,) + mu.shape)
    tau = np.zeros_like(pi)
    if n_max >= 1:
        pi[1] = 1.0
        tau[1] = mu
    for n in range(2, n_max + 1):
        pi[n] = ((2 * n - 1) * mu * pi[n - 1] - n * pi[n - 2]) / (n - 1)
        tau[n] = n * mu * pi[n] - (n + 1) * pi[n - 1]
    return pi, tau


def _series(x, pis, taus, sin_th, cos_ph, sin_ph, zl, dzl, coef_m, coef_n):
    """One multipole sum; returns stacked spherical components (3, ...).

    ``coef_m``/``coef_n`` weight the magnetic-type (m) and electric-type (n)
    harmonics per order; the caller maps them onto E or H of either region.
    """
    n_max = coef_m.shape[0]
    orders = np.arange(1, n_max + 1)
    prefac = 1j ** orders * (2 * orders + 1) / (orders * (orders + 1))

    shape = np.broadcast_shapes(x.shape, sin_th.shape, cos_ph.shape)
    comp = np.zeros((3,) + shape, dtype=complex)
    for i, n in enumerate(orders):
        en = prefac[i]
        cm, cn = coef_m[i], coef_n[i]
        z_over_x = zl[n] / x
        dz_over_x = dzl[n] / x
        comp[0] += en * (-1j * cn) * n * (n + 1) * sin_th * pis[n] * z_over_x * cos_ph
        comp[1] += en * (cm * pis[n] * zl[n] - 1j * cn * taus[n] * dz_over_x) * cos_ph
        comp[2] += en * (-cm * taus[n] * zl[n] + 1j * cn * pis[n] * dz_over_x) * sin_ph
    return comp


def _series_h(x, pis, taus, sin_th, cos_ph, sin_ph, zl, dzl, coef_m, coef_n):
    """Same sum with the even/odd harmonic roles swapped, as H needs."""
    n_max = coef_m.shape[0]
    orders = np.arange(1, n_max + 1)
    prefac = 1j ** orders * (2 * orders + 1) / (orders * (orders + 1))

    shape = np.broadcast_shapes(x.shape, sin_th.shape, cos_ph.shape)
    comp = np.zeros((3,) + shape, dtype=complex)
    for i, n in enumerate(orders):
        en = prefac[i]
        cm, cn = coef_m[i], coef_n[i]
        z_over_x = zl[n] / x
        dz_over_x = dzl[n] / x
        comp[0] += en * (1j * cn) * n * (n + 1) * sin_th * pis[n] * z_over_x * sin_ph
        comp[1] += en * (-cm * pis[n] * zl[n] + 1j * cn * taus[n] * dz_over_x) * sin_ph
        comp[2] += en * (-cm * taus[n] * zl[n] + 1j * cn * pis[n] * dz_over_x) * cos_ph
    return comp


def fields_at_points(cfg: MieConfig, r, theta, phi):
    """E and H at arbitrary points; arrays broadcast together.

    Returns ``(e, h)`` with shape ``broadcast_shape + (3,)`` in the spherical
    basis.  Points with ``r < radius`` get the internal series, all others
    the incident-plus-scattered series.
    """
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(theta, dtype=float),
        np.asarray(phi, dtype=float))
    shape = r.shape
    r = np.atleast_1d(r).ravel()
    theta = np.atleast_1d(theta).ravel()
    phi = np.atleast_1d(phi).ravel()
    if np.any(r < 0):
        raise ValueError("r must be non-negative")

    n_max = cfg.resolved_n_max()
    a_int, b_int, a_ext, b_ext = coefficient_table(cfg, n_max)
    omega = TWO_PI * cfg.frequency
    k1, k2 = cfg.k_sphere, cfg.k_medium

    e = np.empty((r.size, 3), dtype=complex)
    h = np.empty((r.size, 3), dtype=complex)
    inside = r < cfg.radius

    for mask, internal in ((inside, True), (~inside, False)):
        if not np.any(mask):
            continue
        rm, thm, phm = r[mask], theta[mask], phi[mask]
        sin_th, cos_th = np.sin(thm), np.cos(thm)
        cos_ph, sin_ph = np.cos(phm), np.sin(phm)
        pis, taus = angular_pi_tau(n_max, cos_th)
        if internal:
            x = k1 * rm
            x = np.where(np.abs(x) < 1e-12, 1e-12, x)  # finite origin limit
            jl = jn_ladder(n_max, x)
            djl = riccati_j_derivative_ladder(n_max, x, jl=jl)
            pref_h = -k1 / (cfg.mu_sphere * MU_0 * omega)
            em = _series(x, pis, taus, sin_th, cos_ph, sin_ph, jl, djl, a_int, b_int)
            hm = pref_h * _series_h(x, pis, taus, sin_th, cos_ph, sin_ph, jl, djl,
                                    b_int, a_int)
        else:
            x = k2 * rm
            x = np.where(np.abs(x) < 1e-12, 1e-12, x)
            jl = jn_ladder(n_max, x)
            hl = h1_ladder(n_max, x)
            djl = riccati_j_derivative_ladder(n_max, x, jl=jl)
            dhl = riccati_h1_derivative_ladder(n_max, x, hl=hl)
            pref_h = -k2 / (cfg.mu_medium * MU_0 * omega)
            ones = np.ones_like(a_ext)
            # incident series (unit coefficients, regular functions) plus
            # scattered series (external coefficients, outgoing functions)
            em = (_series(x, pis, taus, sin_th, cos_ph, sin_ph, jl, djl, ones, ones)
                  + _series(x, pis, taus, sin_th, cos_ph, sin_ph, hl, dhl, a_ext, b_ext))
            hm = pref_h * (
                _series_h(x, pis, taus, sin_th, cos_ph, sin_ph, jl, djl, ones, ones)
                + _series_h(x, pis, taus, sin_th, cos_ph, sin_ph, hl, dhl, b_ext, a_ext))
        e[mask] = np.moveaxis(em, 0, -1)
        h[mask] = np.moveaxis(hm, 0, -1)

    return e.reshape(shape + (3,)), h.reshape(shape + (3,))


def field_at_point(cfg: MieConfig, r: float, theta: float, phi: float) -> FieldSample:
    """Fields at a single point (spherical coordinates)."""
    e, h = fields_at_points(cfg, r, theta, phi)
    if not (np.all(np.isfinite(e)) and np.all(np.isfinite(h))):
        raise NumericError(f"field evaluation failed at r={r}, theta={theta}, phi={phi}")
    return FieldSample(float(r), float(theta), float(phi), e, h)


def _plane_to_xyz(plane: str, u, v):
    zeros = np.zeros_like(u)
    if plane == "xy":
        return u, v, zeros
    if plane == "xz":
        return u, zeros, v
    if plane == "yz":
        return zeros, u, v
    raise ValueError(f"plane must be one of {_PLANES}, got {plane!r}")


def field_map(cfg: MieConfig, plane: str = "yz", extent: float | None = None,
              resolution: int = 64) -> FieldMap:
    """Rasterize |E| and |H| over a square axis-aligned plane through the origin.

    ``extent`` is the half-width of the square in metres (default 1.6 radii).
    The incident wave propagates along +z and is polarized along x, so the
    'yz' plane contains the incident H polarization and shows the magnetic
    lobe structure of the resonant modes.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    if plane not in _PLANES:
        raise ValueError(f"plane must be one of {_PLANES}, got {plane!r}")
    if extent is None:
        extent = 1.6 * cfg.radius
    if extent <= 0:
        raise ValueError("extent must be positive")

    axis = np.linspace(-extent, extent, resolution)
    uu, vv = np.meshgrid(axis, axis)
    x, y, z = _plane_to_xyz(plane, uu.ravel(), vv.ravel())
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arccos(np.clip(np.divide(z, r, out=np.zeros_like(r), where=r > 0),
                              -1.0, 1.0))
    phi = np.arctan2(y, x)

    if _kernels.map_fields_numba is not None:
        n_max = cfg.resolved_n_max()
        a_int, b_int, a_ext, b_ext = coefficient_table(cfg, n_max)
        omega = TWO_PI * cfg.frequency
        abs_e, abs_h = _kernels.map_fields_numba(
            r, theta, phi, cfg.radius, complex(cfg.k_sphere), float(cfg.k_medium),
            complex(-cfg.k_sphere / (cfg.mu_sphere * MU_0 * omega)),
            complex(-cfg.k_medium / (cfg.mu_medium * MU_0 * omega)),
            n_max, a_int, b_int, a_ext, b_ext)
    else:
        e, h = fields_at_points(cfg, r, theta, phi)
        abs_e = np.linalg.norm(np.abs(e), axis=-1)
        abs_h = np.linalg.norm(np.abs(h), axis=-1)

    bad = ~(np.isfinite(abs_e) & np.isfinite(abs_h))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NumericError(
            f"field map cell at ({uu.ravel()[i]:.6e}, {vv.ravel()[i]:.6e}) m "
            "evaluated to a non-finite value")
    return FieldMap(plane, axis, axis.copy(),
                    abs_e.reshape(resolution, resolution),
                    abs_h.reshape(resolution, resolution))
