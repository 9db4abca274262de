"""Nine-level NV rate-equation model and ODMR spectrum synthesis."""

from spinmie.nv.dynamics import (
    LinearDynamics,
    build_system,
    photoluminescence,
    steady_state,
    time_evolve,
)
from spinmie.nv.params import NvModelParams, NvState
from spinmie.nv.spectrum import (
    ContrastPoint,
    OdmrSpectrum,
    contrast_vs_coupling,
    dip_fwhm,
    odmr_spectrum,
)

__all__ = [
    "ContrastPoint",
    "LinearDynamics",
    "NvModelParams",
    "NvState",
    "OdmrSpectrum",
    "build_system",
    "contrast_vs_coupling",
    "dip_fwhm",
    "odmr_spectrum",
    "photoluminescence",
    "steady_state",
    "time_evolve",
]
