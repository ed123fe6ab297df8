"""Exception hierarchy shared by all modules."""


class LandauFactorError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(LandauFactorError, ValueError):
    """Invalid truncation, parameters, path specification or run config."""


class DomainError(LandauFactorError, ValueError):
    """A time argument lies outside the domain of a drive path."""


class ContractError(LandauFactorError, ValueError):
    """A precondition of an operation is violated (open path where a loop is needed, ...)."""


class NumericalContractError(ContractError):
    """A numerical precondition fails, e.g. a generator is not skew-Hermitian."""


class QuadratureError(LandauFactorError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, *, interval=None, estimate=None, error=None):
        super().__init__(message)
        self.interval = interval
        self.estimate = estimate
        self.error = error

    def __str__(self):
        base = super().__str__()
        if self.interval is None:
            return base
        return f"{base} (interval={self.interval}, estimate={self.estimate}, error={self.error})"
