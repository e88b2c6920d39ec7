"""Exception hierarchy shared by all backends."""


class RecurrenceError(Exception):
    """Base class for errors raised by auxseq."""


class InvalidOrderError(RecurrenceError, ValueError):
    """Order gap N outside the supported range."""


class OrderMismatchError(RecurrenceError, ValueError):
    """Two ring elements (or a spec and a root set) disagree on N."""


class IndexRangeError(RecurrenceError, ValueError):
    """A sequence index outside the operation's domain."""


class PrecisionError(RecurrenceError, ArithmeticError):
    """A floating-point backend could not certify its result.

    ``distance`` is the offending distance (rounding gap, imaginary residue or
    remainder) when one is available.
    """

    def __init__(self, message, distance=None):
        super().__init__(message)
        self.distance = distance


class ConvergenceError(PrecisionError):
    """Root iteration ran out of budget; ``residuals`` holds |p(x_k)| per root."""

    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = tuple(residuals)


class TooLargeToExpand(RecurrenceError, OverflowError):
    """A factored value would exceed the configured digit bound when expanded."""

    def __init__(self, digits, limit):
        super().__init__(f"expansion would have ~{digits} digits (limit {limit})")
        self.digits = digits
        self.limit = limit
