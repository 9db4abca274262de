"""Special-function accuracy against arbitrary-precision and closed-form oracles."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinmie.mie.bessel import (
    jn_ladder,
    riccati_derivative,
    riccati_h1_derivative,
    riccati_j_derivative,
    spherical_h1,
    spherical_jn,
    spherical_yn,
    yn_ladder,
)

mp.mp.dps = 50


def j_series_oracle(n, x):
    """Arbitrary-precision power series for j_n, independent of recurrences."""
    x = mp.mpf(x)
    total = mp.mpf(0)
    for k in range(0, 300):
        term = ((-1) ** k * x ** (n + 2 * k)
                / (mp.mpf(2) ** k * mp.factorial(k) * mp.fac2(2 * n + 2 * k + 1)))
        total += term
        if abs(term) < mp.mpf(10) ** -60 * max(abs(total), mp.mpf(10) ** -30):
            break
    return total


def test_j0_at_pi_is_zero():
    assert abs(spherical_jn(0, math.pi)) < 1e-15


def test_j1_small_argument_limit():
    # x/3 - x^3/30 + ...; series oracle value frozen below
    assert spherical_jn(1, 0.001) == pytest.approx(3.3333330000000119e-4, rel=1e-12)


def test_j5_of_10_matches_series_oracle():
    frozen = -0.055534511621452180909  # j_series_oracle(5, 10)
    # frozen literal agrees with the oracle to double-precision spacing
    assert float(mp.mpf(frozen) - j_series_oracle(5, 10)) == pytest.approx(0.0, abs=1e-17)
    assert spherical_jn(5, 10.0) == pytest.approx(frozen, rel=1e-10)


@pytest.mark.parametrize("n,x", [(3, 0.5), (12, 2.0), (30, 7.5), (60, 40.0), (8, 95.0)])
def test_jn_accuracy_across_regimes(n, x):
    oracle = float(j_series_oracle(n, x))
    assert spherical_jn(n, x) == pytest.approx(oracle, rel=1e-10)


def test_jn_complex_argument_against_mpmath():
    z = 3.0 + 1.5j
    oracle = mp.sqrt(mp.pi / (2 * mp.mpc(z))) * mp.besselj(mp.mpf("4.5"), mp.mpc(z))
    got = spherical_jn(4, z)
    assert abs(got - complex(oracle)) < 1e-12 * abs(complex(oracle))


def test_h0_closed_form():
    x = 1.0
    expected = -1j * np.exp(1j * x) / x
    assert spherical_h1(0, x) == pytest.approx(expected, rel=1e-14)


def test_h2_closed_form_rational_trig():
    x = 3.5
    j2 = (3 / x**3 - 1 / x) * math.sin(x) - 3 / x**2 * math.cos(x)
    y2 = (-3 / x**3 + 1 / x) * math.cos(x) - 3 / x**2 * math.sin(x)
    assert j2 == pytest.approx(0.30501551189929668, rel=1e-14)
    assert y2 == pytest.approx(-0.11612829076848648, rel=1e-14)
    assert spherical_h1(2, x) == pytest.approx(complex(j2, y2), rel=1e-12)


def test_yn_pole_rejected():
    with pytest.raises(ValueError):
        spherical_yn(2, 1e-14)
    with pytest.raises(ValueError):
        spherical_h1(1, 0.0)


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        spherical_jn(-1, 1.0)


def test_order_overflow_guard():
    with pytest.raises(OverflowError):
        spherical_jn(501, 1.0)


def test_wronskian_identity():
    # j_n y_n' - j_n' y_n = 1/x^2 with z_n' = z_{n-1} - (n+1)/x z_n
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(1, 30))
        x = rng.uniform(0.2, 60.0)
        jl = jn_ladder(n, x)[:, 0]
        yl = yn_ladder(n, x)[:, 0]
        jp = jl[n - 1] - (n + 1) / x * jl[n]
        yp = yl[n - 1] - (n + 1) / x * yl[n]
        assert jl[n] * yp - jp * yl[n] == pytest.approx(1.0 / x**2, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 50.0), st.integers(1, 29))
def test_three_term_recurrence_property(x, n):
    # (2n+1) z_n / x = z_{n-1} + z_{n+1} for j, y and h1
    jl = jn_ladder(n + 1, x)[:, 0]
    yl = yn_ladder(n + 1, x)[:, 0]
    for ladder in (jl, yl, jl + 1j * yl):
        lhs = (2 * n + 1) * ladder[n] / x
        rhs = ladder[n - 1] + ladder[n + 1]
        scale = max(abs(lhs), abs(rhs), 1e-300)
        assert abs(lhs - rhs) / scale < 1e-10


def test_riccati_j_order0_closed_form():
    assert riccati_j_derivative(0, 1.0) == pytest.approx(math.cos(1.0), rel=1e-14)


def _central_difference(fun, x, step=1e-6):
    return (fun(x + step) - fun(x - step)) / (2 * step)


def test_riccati_j_matches_finite_difference():
    n, x = 3, 2.2
    fd = _central_difference(lambda t: t * complex(spherical_jn(n, t)), x)
    assert riccati_j_derivative(n, x) == pytest.approx(fd, rel=1e-8)


def test_riccati_h1_matches_finite_difference():
    n, x = 2, 4.0 + 0.0j
    fd = _central_difference(lambda t: t * spherical_h1(n, t), x)
    assert riccati_h1_derivative(n, x) == pytest.approx(fd, rel=1e-8)


def test_riccati_dispatch():
    assert riccati_derivative("j", 1, 1.3) == riccati_j_derivative(1, 1.3)
    assert riccati_derivative("h1", 1, 1.3) == riccati_h1_derivative(1, 1.3)
    with pytest.raises(ValueError):
        riccati_derivative("y2", 1, 1.3)


def test_vectorized_matches_scalar():
    xs = np.array([0.3, 1.7, 9.2, 33.0])
    ladder = jn_ladder(6, xs)
    for i, x in enumerate(xs):
        assert ladder[6, i] == pytest.approx(complex(spherical_jn(6, float(x))), rel=1e-12)
