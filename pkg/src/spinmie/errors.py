"""Exception hierarchy shared by the engine modules and the CLI."""


class SpinmieError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SpinmieError):
    """Invalid configuration file, key or parameter value."""


class NumericError(SpinmieError):
    """A numeric routine failed (singular system, no minima, ...)."""


class SingularSystemError(NumericError):
    """The constrained steady-state system is rank deficient."""


class ResonanceSearchError(NumericError):
    """Fewer resonance minima found than requested."""


class FitConvergenceError(SpinmieError):
    """A fit result was used that did not converge."""
