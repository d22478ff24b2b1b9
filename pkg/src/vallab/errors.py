"""Shared exception types."""


class VallabError(Exception):
    """Base class for library errors."""


class ValidationError(VallabError):
    """A construction or CLI parameter violates a documented precondition."""


class PrecisionError(VallabError):
    """A result cannot be certified at the working precision."""
