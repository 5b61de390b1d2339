"""Exception types shared across the package."""


class PamcongError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(PamcongError):
    """Input or structure fails a defining condition (bad table, bad literal, ...)."""


class SizeBoundError(PamcongError):
    """A construction or enumeration would exceed its configured size bound."""
