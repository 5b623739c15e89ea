"""Exception hierarchy shared across the package."""


class RelbelError(Exception):
    """Base class for all package errors."""


class ValidationError(RelbelError, ValueError):
    """Inputs violate a documented contract (types, domains, invariants)."""


class NumericError(RelbelError, ArithmeticError):
    """A computation is undefined for the given inputs.

    Messages start with the name of the originating operation so the
    command line can surface which step failed.
    """


class ConfigError(ValidationError):
    """An analysis configuration failed validation before any computation."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field
        self.detail = message
