"""Shared error types raised by the analytics modules.

The HTTP service and the CLI map these onto status codes / exit codes;
everything else just lets them propagate.
"""


class NotFoundError(LookupError):
    """An entity, category or document key that does not exist."""


class InvalidRangeError(ValueError):
    """A date range whose start is after its end."""


class ModelNotBuiltError(RuntimeError):
    """A topic model was requested for a scope that has not been fitted."""
