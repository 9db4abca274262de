"""Mie coefficients, sphere fields, resonance search and ellipse sizing."""

from spinmie.mie.bessel import (
    riccati_derivative,
    riccati_h1_derivative,
    riccati_j_derivative,
    spherical_h1,
    spherical_jn,
    spherical_yn,
)
from spinmie.mie.coefficients import (
    MieCoefficients,
    MieConfig,
    characteristic_fn,
    coefficient_table,
    mie_coefficients,
)
from spinmie.mie.fields import FieldMap, FieldSample, field_at_point, field_map, fields_at_points
from spinmie.mie.geometry import ellipse_perimeter, size_ellipsoid
from spinmie.mie.resonance import ResonanceResult, find_resonances

__all__ = [
    "FieldMap",
    "FieldSample",
    "MieCoefficients",
    "MieConfig",
    "ResonanceResult",
    "characteristic_fn",
    "coefficient_table",
    "ellipse_perimeter",
    "field_at_point",
    "field_map",
    "fields_at_points",
    "find_resonances",
    "mie_coefficients",
    "riccati_derivative",
    "riccati_h1_derivative",
    "riccati_j_derivative",
    "size_ellipsoid",
    "spherical_h1",
    "spherical_jn",
    "spherical_yn",
]
