"""Exception hierarchy shared by every module."""


class HeronError(Exception):
    """Base class for all library errors."""


class DomainError(HeronError, ValueError):
    """An argument lies outside the domain of an operation."""


class ZeroDivisorError(DomainError, ZeroDivisionError):
    """A recurrence or rational map hit a zero denominator.

    ``index`` names the sequence index (or orbit step) where it happened.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InvariantViolation(HeronError, RuntimeError):
    """An identity that must hold exactly was found to fail."""


class CheckpointError(HeronError):
    """A search checkpoint is unreadable or belongs to a different run."""


class InconclusiveError(HeronError):
    """Classification cannot be decided with the given bound."""
