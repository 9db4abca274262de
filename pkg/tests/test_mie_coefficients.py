"""Coefficient identities: index-matched nulls, passivity, scaling, poles."""

import numpy as np
import pytest

from spinmie.mie.coefficients import (
    MieConfig,
    characteristic_fn,
    coefficient_table,
    mie_coefficients,
)


def _cfg(**kw):
    base = dict(n_sphere=8.9, n_medium=1.0, radius=0.0107, frequency=2.87e9)
    base.update(kw)
    return MieConfig(**base)


def test_index_matched_sphere_does_not_scatter():
    cfg = _cfg(n_sphere=1.0)
    for order in range(1, 6):
        c = mie_coefficients(order, cfg)
        assert abs(c.a_ext) < 1e-12
        assert abs(c.b_ext) < 1e-12
        assert c.a_int == pytest.approx(1.0, abs=1e-12)
        assert c.b_int == pytest.approx(1.0, abs=1e-12)


def test_characteristic_fn_never_vanishes_without_contrast():
    # N=1, mu1=mu2: D_n collapses to the Wronskian i*mu/rho
    cfg = _cfg(n_sphere=1.0)
    rho = np.linspace(0.2, 8.0, 400)
    d = characteristic_fn(2, rho, cfg)
    assert np.allclose(d, 1j / rho, rtol=1e-9)
    assert np.abs(d).min() > 0.1 / rho.max()


def _radius_for_rho(rho, frequency=2.87e9, n_medium=1.0):
    wavelength = 299792458.0 / frequency
    return rho * wavelength / (2 * np.pi * n_medium)


def test_external_amplitudes_passive_for_lossless_sphere():
    # |a_ext|, |b_ext| <= 1 for every real index tested
    for relindex in (1.5, 3.0, 8.9):
        for rho in np.linspace(0.2, 10.0, 35):
            cfg = _cfg(n_sphere=relindex, radius=_radius_for_rho(rho))
            a_int, b_int, a_ext, b_ext = coefficient_table(cfg, n_max=10)
            assert np.all(np.abs(a_ext) <= 1 + 1e-9)
            assert np.all(np.abs(b_ext) <= 1 + 1e-9)


def test_dimensionless_scaling_invariance():
    # same (N, rho, mu ratio): scaling radius and 1/frequency together
    cfg_a = _cfg(radius=0.0107, frequency=2.87e9)
    cfg_b = _cfg(radius=0.0107 / 3, frequency=2.87e9 * 3)
    assert cfg_a.size_parameter == pytest.approx(cfg_b.size_parameter, rel=1e-12)
    for order in (1, 2, 3):
        ca = mie_coefficients(order, cfg_a)
        cb = mie_coefficients(order, cfg_b)
        assert ca.a_int == pytest.approx(cb.a_int, rel=1e-12)
        assert ca.a_ext == pytest.approx(cb.a_ext, rel=1e-12)
        assert ca.b_int == pytest.approx(cb.b_int, rel=1e-12)
        assert ca.b_ext == pytest.approx(cb.b_ext, rel=1e-12)


def test_characteristic_matches_internal_coefficient_denominator():
    # |a_int| = mu1 / (rho |D_n|) exactly
    cfg = _cfg()
    rho = cfg.size_parameter
    for order in (1, 2, 3, 4):
        c = mie_coefficients(order, cfg)
        d = characteristic_fn(order, rho, cfg)
        assert abs(c.a_int) == pytest.approx(cfg.mu_sphere / (rho * abs(d)), rel=1e-10)


def test_config_validation():
    with pytest.raises(ValueError):
        MieConfig(n_sphere=-1.0, radius=0.01, frequency=1e9)
    with pytest.raises(ValueError):
        MieConfig(n_sphere=2.0, n_medium=0.0, radius=0.01, frequency=1e9)
    with pytest.raises(ValueError):
        MieConfig(n_sphere=2.0, radius=-0.01, frequency=1e9)
    with pytest.raises(ValueError):
        MieConfig(n_sphere=2.0, radius=0.01, frequency=0.0)
    with pytest.raises(ValueError):
        MieConfig(n_sphere=2.0, radius=0.01, frequency=1e9, n_max=0)


def test_truncation_default_has_floor_of_ten():
    assert _cfg(radius=1e-4).resolved_n_max() == 10
    big = _cfg(radius=0.3)  # rho ~ 18
    assert big.resolved_n_max() >= 18


def test_lossy_index_accepted():
    cfg = _cfg(n_sphere=8.9 + 0.5j)
    c = mie_coefficients(3, cfg)
    assert np.isfinite([c.a_int, c.b_int, c.a_ext, c.b_ext]).all()


def test_characteristic_rejects_bad_inputs():
    cfg = _cfg()
    with pytest.raises(ValueError):
        characteristic_fn(0, 0.5, cfg)
    with pytest.raises(ValueError):
        characteristic_fn(1, -0.5, cfg)
