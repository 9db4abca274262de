"""Ellipse-perimeter sizing of spheroidal resonators."""

from __future__ import annotations

import math

from scipy.constants import c as SPEED_OF_LIGHT

from spinmie.errors import NumericError


def ellipse_perimeter(a: float, b: float) -> float:
    """Perimeter of an ellipse with semi-axes ``a >= b`` (Ramanujan form).

    ``pi (a+b) (1 + 3h / (10 + sqrt(4 - 3h)))`` with
    ``h = ((a-b)/(a+b))^2``; exact for the circle, and within 0.05% of the
    true arc length everywhere else.
    """
    if not (a >= b > 0):
        raise ValueError("require a >= b > 0")
    h = ((a - b) / (a + b)) ** 2
    return math.pi * (a + b) * (1.0 + 3.0 * h / (10.0 + math.sqrt(4.0 - 3.0 * h)))


def size_ellipsoid(a: float, alpha: float, frequency: float,
                   tol: float = 1e-9) -> float:
    """Semi-minor axis ``b`` such that the cross-section perimeter equals
    ``alpha * wavelength``.

    Solved by bisection on ``b`` in ``(0, a]``; the perimeter is strictly
    increasing in ``b``, so the root is unique when it exists.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if a <= 0:
        raise ValueError("a must be positive")
    if frequency <= 0:
        raise ValueError("frequency must be positive")
    target = alpha * SPEED_OF_LIGHT / frequency
    lo, hi = 0.0, a
    c_lo = ellipse_perimeter(a, a * 1e-12)  # b -> 0 limit, ~3.998 a
    c_hi = ellipse_perimeter(a, a)          # circle, 2 pi a
    if not (c_lo <= target <= c_hi):
        raise NumericError(
            f"no semi-minor axis achieves perimeter {target:.6e} m for "
            f"a={a:.6e} m; attainable range is [{c_lo:.6e}, {c_hi:.6e}] m")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if ellipse_perimeter(a, max(mid, a * 1e-15)) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0
