"""Exception and warning classes raised across the package."""


class PairbreakerError(Exception):
    """Base class for all errors raised by pairbreaker."""


class DomainError(PairbreakerError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParseError(PairbreakerError, ValueError):
    """A data file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(PairbreakerError, ValueError):
    """Parsed data violate a structural or physical invariant."""


class OutOfRangeError(PairbreakerError, ValueError):
    """A frequency lies outside the range covered by tabulated data."""


class SingularityError(PairbreakerError, ZeroDivisionError):
    """A formula hit a zero denominator."""


class NoRootError(PairbreakerError, ValueError):
    """A bracketed root search found no sign change."""


class FitError(PairbreakerError, RuntimeError):
    """A fit or iterative solve failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConfigError(PairbreakerError, ValueError):
    """A run configuration is missing fields or holds invalid values."""


class PairbreakerWarning(UserWarning):
    """Base class for warnings emitted by pairbreaker."""


class ClampWarning(PairbreakerWarning):
    """A computed quantity was clamped into its valid range."""


class BoundaryWarning(PairbreakerWarning):
    """A fitted parameter finished on one of its bounds."""


class RegimeWarning(PairbreakerWarning):
    """A model is evaluated outside the regime where it is trusted."""
