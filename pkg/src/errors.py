"""
Exception hierarchy for logmonoid.
Each error class carries the CLI exit code it maps to.
"""

from .constants import EXIT_BOUND, EXIT_INPUT, EXIT_VERIFICATION


class LogMonoidError(Exception):
    """Base class for every error raised by the package."""

    exit_code = EXIT_INPUT
    kind = "error"


class InputError(LogMonoidError, ValueError):
    """Malformed data or a violated precondition."""

    kind = "input"


class PreconditionError(InputError):
    """A documented precondition does not hold.

    Args:
        message: Human readable description of the violated clause
        witness: Optional element demonstrating the violation
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SchemaError(InputError):
    """JSON input does not match the expected schema."""

    kind = "schema"


class ConfigurationError(InputError):
    """An environment variable holds an invalid value."""

    kind = "config"


class InputFileError(InputError):
    """An input path could not be read."""

    kind = "io"


class UsageError(LogMonoidError):
    """Command line usage problem."""

    kind = "usage"


class BoundExceededError(LogMonoidError):
    """A configured computational bound was hit.

    Args:
        message: What was being enumerated
        bound: The configured limit
        requested: The size that would have been required, when known
    """

    exit_code = EXIT_BOUND
    kind = "bound"

    def __init__(self, message: str, bound: int | None = None, requested: int | None = None):
        super().__init__(message)
        self.bound = bound
        self.requested = requested


class VerificationError(LogMonoidError):
    """An internal certificate or cross-check failed."""

    exit_code = EXIT_VERIFICATION
    kind = "verification"
