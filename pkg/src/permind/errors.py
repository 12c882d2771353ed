"""Shared exception types."""


class PermindError(Exception):
    """Base class for library errors."""


class SizeMismatchError(PermindError, ValueError):
    """Two permutations of different board sizes were combined."""


class LocalityViolation(PermindError):
    """A guess broke the locality constraint of the session.

    Carries the offending difference positions (1-based) when known.
    """

    def __init__(self, message, positions=()):
        super().__init__(message)
        self.positions = tuple(positions)


class ProtocolViolation(PermindError):
    """A codemaker (or relayed feedback) produced an impossible answer."""


class CapacityError(PermindError):
    """An exhaustive operation was asked to run beyond its configured cap."""
