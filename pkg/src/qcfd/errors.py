"""Exception hierarchy. CLI exit codes: ConfigError family maps to 2,
NumericError family to 3, I/O problems to 4."""


class QcfdError(Exception):
    """Base class for all package errors."""


class ConfigError(QcfdError):
    """Invalid configuration, arguments or engine/regime mismatch."""


class UnsupportedRegimeError(ConfigError):
    """A closed-form evaluator was asked for a regime it does not cover."""


class GridError(ConfigError):
    """Mismatched or malformed time grids."""


class NumericError(QcfdError):
    """A numerical validity check failed (unitarity, norm, convergence)."""


class TruncationError(NumericError):
    """Fock-space truncation too small for the requested state or evolution."""

    def __init__(self, message, offending_amplitude=None, suggested_dim=None):
        super().__init__(message)
        self.offending_amplitude = offending_amplitude
        self.suggested_dim = suggested_dim


class ResonanceError(NumericError):
    """Quasienergy crossing q+ - q- = (2k + 2l + 1) w0 where the
    Floquet-basis rotating-wave treatment is invalid."""

    def __init__(self, message, odd_multiple=None, k=None, l=None, q_plus=None):
        super().__init__(message)
        self.odd_multiple = odd_multiple
        self.k = k
        self.l = l
        self.q_plus = q_plus


class StepSizeError(NumericError):
    """Adaptive integrator could not hold the requested tolerance."""
