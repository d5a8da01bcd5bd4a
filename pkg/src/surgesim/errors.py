"""Exception types shared across the package."""


class SurgeSimError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SurgeSimError):
    """A configuration file or parameter set is invalid."""


class DomainError(SurgeSimError):
    """An argument lies outside the mathematical domain of an operation."""


class NoRootError(SurgeSimError):
    """A bracketed root search found no sign change."""


class AmbiguousRootWarning(UserWarning):
    """Multiple balance crossings were detected; the smallest was returned.

    Carries all detected roots so callers can inspect them.
    """

    def __init__(self, message: str, roots: tuple = ()):
        super().__init__(message)
        self.roots = roots


class NoTransitionError(SurgeSimError):
    """A classification sweep never changed outcome over the search range."""


class BlowUpError(SurgeSimError):
    """A simulated state exceeded the configured divergence guard."""


class NonFiniteIncrementError(SurgeSimError):
    """A stochastic integrator drew a non-finite random increment."""


class NotNormalizableError(SurgeSimError):
    """A candidate density does not integrate to a finite value."""


class InsufficientSamplesError(SurgeSimError):
    """Too few samples for the requested statistical operation."""


class EmptyAfterCutError(SurgeSimError):
    """Discarding the transient left no samples to reduce."""
