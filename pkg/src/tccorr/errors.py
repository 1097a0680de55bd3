"""Exception hierarchy shared by every module."""


class TCError(Exception):
    """Base class for all errors raised by tccorr."""


class DomainError(TCError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InputError(TCError, ValueError):
    """Malformed input: non-finite entries, wrong shapes, incomplete projector sets."""


class StateError(TCError, ValueError):
    """A matrix is not a valid density matrix (trace, Hermiticity, positivity)."""


class NumericalError(TCError, ArithmeticError):
    """A numerical routine produced values outside its tolerated error band."""


class ConfigurationError(TCError, ValueError):
    """Grid sizes, resolutions or sweep settings are unusable."""


class SolverFailure(TCError, RuntimeError):
    """An iterative solver did not reach its acceptance threshold."""


class AmbiguityError(SolverFailure):
    """The objective has several comparable minima; no unique answer."""
