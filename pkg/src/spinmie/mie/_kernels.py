"""Scalar JIT kernels for per-point field evaluation.

These mirror the vectorized numpy math in :mod:`spinmie.mie.fields` exactly;
the map kernel just avoids the big per-order temporaries when rasterizing
many points.  Only compiled when the JIT path is enabled.
"""

import cmath
import math

import numpy as np

from spinmie import _accel


def _jn_ladder_scalar(n_max, x):
    out = np.empty(n_max + 1, dtype=np.complex128)
    if abs(x) < 1e-12:
        out[0] = 1.0 - x * x / 6.0
        if n_max >= 1:
            out[1] = x / 3.0
        series = x / 3.0
        for k in range(2, n_max + 1):
            series = series * x / (2 * k + 1)
            out[k] = series
        return out
    j0 = cmath.sin(x) / x
    out[0] = j0
    if n_max == 0:
        return out
    j1 = cmath.sin(x) / (x * x) - cmath.cos(x) / x
    out[1] = j1
    if n_max == 1:
        return out
    top = n_max if n_max > int(abs(x)) else int(abs(x))
    start = top + 16 + int(math.ceil(math.sqrt(40.0 * n_max)))
    ratios = np.empty(n_max + 1, dtype=np.complex128)
    r = 0.0 + 0.0j
    for k in range(start, 0, -1):
        r = 1.0 / ((2 * k + 1) / x - r)
        if k <= n_max:
            ratios[k] = r
    if abs(j1) > abs(j0):
        acc = j1
    else:
        acc = j0 * ratios[1]
    out[1] = acc
    for k in range(2, n_max + 1):
        acc = acc * ratios[k]
        out[k] = acc
    return out


def _yn_ladder_scalar(n_max, x):
    out = np.empty(n_max + 1, dtype=np.complex128)
    out[0] = -cmath.cos(x) / x
    if n_max >= 1:
        out[1] = -cmath.cos(x) / (x * x) - cmath.sin(x) / x
    for k in range(1, n_max):
        out[k + 1] = (2 * k + 1) / x * out[k] - out[k - 1]
    return out


def _point_fields(r, th, ph, radius, k1, k2, pref_h1, pref_h2, n_max,
                  a_int, b_int, a_ext, b_ext):
    sin_th = math.sin(th)
    cos_th = math.cos(th)
    cos_ph = math.cos(ph)
    sin_ph = math.sin(ph)

    # angular functions by upward recurrence
    pis = np.zeros(n_max + 1)
    taus = np.zeros(n_max + 1)
    if n_max >= 1:
        pis[1] = 1.0
        taus[1] = cos_th
    for n in range(2, n_max + 1):
        pis[n] = ((2 * n - 1) * cos_th * pis[n - 1] - n * pis[n - 2]) / (n - 1)
        taus[n] = n * cos_th * pis[n] - (n + 1) * pis[n - 1]

    inside = r < radius
    if inside:
        x = k1 * r
    else:
        x = k2 * r + 0.0j
    if abs(x) < 1e-12:
        x = 1e-12 + 0.0j

    jl = _jn_ladder_scalar(n_max, x)
    djl = np.empty(n_max + 1, dtype=np.complex128)
    djl[0] = cmath.cos(x)
    for k in range(1, n_max + 1):
        djl[k] = x * jl[k - 1] - k * jl[k]
    hl = np.zeros(n_max + 1, dtype=np.complex128)
    dhl = np.zeros(n_max + 1, dtype=np.complex128)
    if not inside:
        yl = _yn_ladder_scalar(n_max, x)
        hl = jl + 1j * yl
        dhl[0] = cmath.exp(1j * x)
        for k in range(1, n_max + 1):
            dhl[k] = x * hl[k - 1] - k * hl[k]

    er = 0.0 + 0.0j
    eth = 0.0 + 0.0j
    eph = 0.0 + 0.0j
    hr = 0.0 + 0.0j
    hth = 0.0 + 0.0j
    hph = 0.0 + 0.0j
    en = 1.0 + 0.0j
    for i in range(n_max):
        n = i + 1
        en = en * 1j
        pref = en * (2 * n + 1) / (n * (n + 1))
        if inside:
            z = jl[n]
            zx = jl[n] / x
            dzx = djl[n] / x
            cm_e, cn_e = a_int[i], b_int[i]
            cm_h, cn_h = b_int[i], a_int[i]
            er += pref * (-1j * cn_e) * n * (n + 1) * sin_th * pis[n] * zx * cos_ph
            eth += pref * (cm_e * pis[n] * z - 1j * cn_e * taus[n] * dzx) * cos_ph
            eph += pref * (-cm_e * taus[n] * z + 1j * cn_e * pis[n] * dzx) * sin_ph
            hr += pref * (1j * cn_h) * n * (n + 1) * sin_th * pis[n] * zx * sin_ph
            hth += pref * (-cm_h * pis[n] * z + 1j * cn_h * taus[n] * dzx) * sin_ph
            hph += pref * (-cm_h * taus[n] * z + 1j * cn_h * pis[n] * dzx) * cos_ph
        else:
            # incident (unit coefficients, j) plus scattered (coefficients, h)
            z_e_m = jl[n] + a_ext[i] * hl[n]
            z_e_n = jl[n] + b_ext[i] * hl[n]
            dz_e_n = djl[n] + b_ext[i] * dhl[n]
            z_h_m = jl[n] + b_ext[i] * hl[n]
            z_h_n = jl[n] + a_ext[i] * hl[n]
            dz_h_n = djl[n] + a_ext[i] * dhl[n]
            er += pref * (-1j) * n * (n + 1) * sin_th * pis[n] * (z_e_n / x) * cos_ph
            eth += pref * (pis[n] * z_e_m - 1j * taus[n] * dz_e_n / x) * cos_ph
            eph += pref * (-taus[n] * z_e_m + 1j * pis[n] * dz_e_n / x) * sin_ph
            hr += pref * 1j * n * (n + 1) * sin_th * pis[n] * (z_h_n / x) * sin_ph
            hth += pref * (-pis[n] * z_h_m + 1j * taus[n] * dz_h_n / x) * sin_ph
            hph += pref * (-taus[n] * z_h_m + 1j * pis[n] * dz_h_n / x) * cos_ph
    if inside:
        hr *= pref_h1
        hth *= pref_h1
        hph *= pref_h1
    else:
        hr *= pref_h2
        hth *= pref_h2
        hph *= pref_h2
    return er, eth, eph, hr, hth, hph


def _map_fields_impl(r, theta, phi, radius, k1, k2, pref_h1, pref_h2, n_max,
                     a_int, b_int, a_ext, b_ext):
    n_pts = r.size
    abs_e = np.empty(n_pts)
    abs_h = np.empty(n_pts)
    for i in range(n_pts):
        er, eth, eph, hr, hth, hph = _point_fields(
            r[i], theta[i], phi[i], radius, k1, k2, pref_h1, pref_h2, n_max,
            a_int, b_int, a_ext, b_ext)
        abs_e[i] = math.sqrt(abs(er) ** 2 + abs(eth) ** 2 + abs(eph) ** 2)
        abs_h[i] = math.sqrt(abs(hr) ** 2 + abs(hth) ** 2 + abs(hph) ** 2)
    return abs_e, abs_h


map_fields_numba = None
if _accel.JIT_ENABLED:
    _njit = _accel.jit(cache=True)
    _jn_ladder_scalar = _njit(_jn_ladder_scalar)
    _yn_ladder_scalar = _njit(_yn_ladder_scalar)
    _point_fields = _njit(_point_fields)
    map_fields_numba = _njit(_map_fields_impl)
