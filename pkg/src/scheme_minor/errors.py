"""Exception hierarchy shared by every module."""


class SchemeMinorError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SchemeMinorError, ValueError):
    """Input text could not be decoded.

    ``position`` is a human-readable locator such as ``"line 3, column 7"``
    or ``"byte 4"``.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class GraphValidationError(SchemeMinorError, ValueError):
    """A decoded object violates a structural invariant (loop, duplicate edge, ...)."""


class PreconditionError(SchemeMinorError, ValueError):
    """An operation was called on input outside its documented domain."""


class HypothesisViolation(PreconditionError):
    """The hypotheses of the removable-set reduction do not hold.

    ``violations`` lists every failed clause so callers can try another (S, F).
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CapacityError(SchemeMinorError):
    """Input exceeds an exact-search cap; no approximate answer is given."""


class InternalInvariantError(SchemeMinorError, AssertionError):
    """A property that must follow from proven facts failed: an implementation bug."""
