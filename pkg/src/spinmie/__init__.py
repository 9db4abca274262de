"""Toolkit for NV-spin ODMR simulation and Mie resonator sizing.

Three engines plus a CLI front end:

* :mod:`spinmie.nv` -- nine-level NV rate-equation model, steady states and
  simulated ODMR spectra.
* :mod:`spinmie.mie` -- Mie coefficients and fields of a dielectric sphere,
  magnetic-resonance finder and ellipse-perimeter sizing.
* :mod:`spinmie.fitting` -- double-Lorentzian fits and contrast extraction.

Hot numeric kernels are JIT-compiled with numba when it is importable; set
``SPINMIE_NO_NUMBA=1`` to force the pure-numpy fallback path.
"""

from spinmie.errors import (
    ConfigError,
    FitConvergenceError,
    NumericError,
    ResonanceSearchError,
    SingularSystemError,
    SpinmieError,
)
from spinmie.fitting import (
    LorentzianFit,
    contrast_summary,
    double_lorentzian,
    extract_contrast,
    fit_spectrum,
)
from spinmie.mie.coefficients import MieCoefficients, MieConfig, characteristic_fn, mie_coefficients
from spinmie.mie.fields import FieldMap, FieldSample, field_at_point, field_map
from spinmie.mie.geometry import ellipse_perimeter, size_ellipsoid
from spinmie.mie.resonance import ResonanceResult, find_resonances
from spinmie.nv.dynamics import LinearDynamics, build_system, photoluminescence, steady_state, time_evolve
from spinmie.nv.params import NvModelParams, NvState
from spinmie.nv.spectrum import OdmrSpectrum, contrast_vs_coupling, dip_fwhm, odmr_spectrum

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "FieldMap",
    "FieldSample",
    "FitConvergenceError",
    "LinearDynamics",
    "LorentzianFit",
    "MieCoefficients",
    "MieConfig",
    "NumericError",
    "NvModelParams",
    "NvState",
    "OdmrSpectrum",
    "ResonanceResult",
    "ResonanceSearchError",
    "SingularSystemError",
    "SpinmieError",
    "build_system",
    "characteristic_fn",
    "contrast_summary",
    "contrast_vs_coupling",
    "dip_fwhm",
    "double_lorentzian",
    "ellipse_perimeter",
    "extract_contrast",
    "field_at_point",
    "field_map",
    "find_resonances",
    "fit_spectrum",
    "mie_coefficients",
    "odmr_spectrum",
    "photoluminescence",
    "size_ellipsoid",
    "steady_state",
    "time_evolve",
]
