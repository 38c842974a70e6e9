"""Shared exception types."""


class GuardExceeded(RuntimeError):
    """A size guard tripped; carries the limiting parameter in its message."""


class InternalCheckError(AssertionError):
    """An identity that is a proved theorem failed; indicates a bug."""
