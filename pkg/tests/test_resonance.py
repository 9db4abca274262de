"""Resonance finder: the 0.645 design constant, scaling, cross-checks."""

import numpy as np
import pytest

from spinmie.errors import ResonanceSearchError
from spinmie.mie.coefficients import MieConfig, characteristic_fn, mie_coefficients
from spinmie.mie.resonance import find_resonances, golden_minimize

WATER_MW = dict(n_sphere=8.9, n_medium=1.0, radius=0.01, frequency=2.87e9)


def test_golden_minimize_quadratic():
    x = golden_minimize(lambda t: (t - 1.7) ** 2, 0.0, 5.0, xtol=1e-10)
    assert x == pytest.approx(1.7, abs=1e-9)


def test_third_mode_design_constant():
    cfg = MieConfig(**WATER_MW)
    res = find_resonances(3, cfg, 0.1, 1.0)[0]
    assert res.rho_res == pytest.approx(0.645, rel=0.01)
    assert res.alpha == res.rho_res
    assert res.mode_index == 1


def test_third_mode_radius_near_ten_point_seven_mm():
    # radius = rho * lambda / (2 pi), lambda = c / 2.87 GHz ~ 104.5 mm
    cfg = MieConfig(**WATER_MW)
    res = find_resonances(3, cfg, 0.1, 1.0)[0]
    wavelength = 299792458.0 / 2.87e9
    assert wavelength == pytest.approx(0.10446, rel=1e-3)
    assert res.radius == pytest.approx(res.rho_res * wavelength / (2 * np.pi), rel=1e-12)
    assert res.radius == pytest.approx(0.0107, rel=0.02)


def test_doubling_frequency_halves_radii():
    cfg1 = MieConfig(**WATER_MW)
    cfg2 = MieConfig(**{**WATER_MW, "frequency": 2 * 2.87e9})
    for order in (1, 2, 3):
        r1 = find_resonances(order, cfg1, 0.1, 1.2, mode_count=2)
        r2 = find_resonances(order, cfg2, 0.1, 1.2, mode_count=2)
        for a, b in zip(r1, r2):
            assert a.rho_res == pytest.approx(b.rho_res, rel=1e-9)
            assert a.radius == pytest.approx(2 * b.radius, rel=1e-9)


def test_minima_are_local_maxima_of_internal_coefficient():
    cfg = MieConfig(**WATER_MW)
    grid = np.linspace(0.1, 1.0, 4001)
    for order in (1, 2, 3):
        res = find_resonances(order, cfg, 0.1, 1.0)[0]
        mag = np.empty(grid.size)
        for i, rho in enumerate(grid):
            c = MieConfig(**{**WATER_MW, "radius": res.radius * rho / res.rho_res})
            mag[i] = abs(mie_coefficients(order, c).a_int)
        i_res = int(np.argmin(np.abs(grid - res.rho_res)))
        i_max = int(np.argmax(mag[max(0, i_res - 40):i_res + 40])) + max(0, i_res - 40)
        assert abs(i_max - i_res) <= 2  # grid tolerance


def test_residual_is_strict_local_minimum():
    cfg = MieConfig(**WATER_MW)
    for res in find_resonances(2, cfg, 0.1, 1.4, mode_count=3):
        d0 = abs(characteristic_fn(2, res.rho_res, cfg))
        assert d0 == pytest.approx(res.residual, rel=1e-12)
        for eps in (1e-4, 1e-3):
            assert abs(characteristic_fn(2, res.rho_res - eps, cfg)) > d0
            assert abs(characteristic_fn(2, res.rho_res + eps, cfg)) > d0


def test_mode_index_orders_ascending():
    cfg = MieConfig(**WATER_MW)
    results = find_resonances(3, cfg, 0.1, 1.6, mode_count=3)
    rhos = [r.rho_res for r in results]
    assert rhos == sorted(rhos)
    assert [r.mode_index for r in results] == [1, 2, 3]


def test_too_many_modes_requested_errors_with_found_list():
    cfg = MieConfig(**WATER_MW)
    with pytest.raises(ResonanceSearchError) as err:
        find_resonances(3, cfg, 0.55, 0.7, mode_count=5)
    assert "needed 5" in str(err.value)
    assert "rho=0.645" in str(err.value)


def test_invalid_ranges_rejected():
    cfg = MieConfig(**WATER_MW)
    with pytest.raises(ValueError):
        find_resonances(3, cfg, 0.0, 1.0)
    with pytest.raises(ValueError):
        find_resonances(3, cfg, 1.0, 0.5)
    with pytest.raises(ValueError):
        find_resonances(3, cfg, 0.1, 1.0, mode_count=0)
