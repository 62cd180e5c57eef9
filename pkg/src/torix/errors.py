"""Exception types shared across the package."""


class TorixError(Exception):
    """Base class for user-facing input errors."""


class FanError(TorixError):
    pass


class DegenerateFanError(FanError):
    """The rays do not span the ambient vector space."""


class NotSmoothError(FanError):
    pass


class NotCompleteError(FanError):
    pass


class NotCartierError(TorixError):
    """A divisor is not Cartier; ``witness`` is the first failing maximal cone."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(TorixError):
    pass


class TheoremViolation(AssertionError):
    """A runtime check of a proven statement failed; this signals a bug."""
