"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``ParameterError`` -> 2,
``ResourceError`` -> 3.
"""


class TraceCodeError(Exception):
    """Base class for all package errors."""


class ParameterError(TraceCodeError, ValueError):
    """Invalid or unsupported user-supplied parameters."""


class UnsupportedParameterError(ParameterError):
    pass


class ConfigurationError(ParameterError):
    """A planar spec that is not admissible for the chosen field."""


class DomainError(TraceCodeError, ValueError):
    """Mathematical domain violation (inverse of zero, a2 = 0, ...)."""


class UsageError(TraceCodeError, TypeError):
    """Operands from different fields mixed together."""


class ResourceError(TraceCodeError):
    """An enumeration would exceed the configured ceiling."""


class IntegrityError(TraceCodeError):
    pass


class EmptyDefiningSetError(TraceCodeError):
    pass


class DegenerateSchemeError(TraceCodeError):
    pass
