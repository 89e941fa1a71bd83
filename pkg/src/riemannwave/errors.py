"""Exception hierarchy shared by every module."""


class RiemannWaveError(Exception):
    """Base class for all errors raised by riemannwave."""


class DomainError(RiemannWaveError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class ArgumentError(RiemannWaveError, ValueError):
    """Malformed input that is not a domain violation (empty grids, bad counts)."""


class ScopeError(RiemannWaveError, ValueError):
    """Parameters fall outside the range a result is known to hold for."""


class SpecificationError(RiemannWaveError, ValueError):
    """A user supplied series rule violates its declared envelope."""


class ConvergenceError(RiemannWaveError, RuntimeError):
    """A numerical procedure did not reach its tolerance.

    The best available estimate is kept in ``estimate`` and the associated
    error estimate in ``error`` (either may be ``None``).
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConsistencyError(RiemannWaveError, RuntimeError):
    """Two routes to the same quantity disagree beyond their error budget."""
