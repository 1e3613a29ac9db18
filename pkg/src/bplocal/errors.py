"""Exception hierarchy for the engine."""


class BPLocalError(Exception):
    """Base class for all engine errors."""


class NonFiniteDegreewise(BPLocalError):
    """A graded piece has infinitely many basis monomials."""


class TruncationExceeded(BPLocalError, ValueError):
    """A generator index is larger than the ring truncation."""


class AmbiguousExtension(BPLocalError):
    """A single summand would land on both sides of a short exact sequence."""


class UnsupportedModule(BPLocalError):
    """The Koszul oracle cannot handle this module/ideal combination."""


class NonZeroComposite(BPLocalError):
    """Two consecutive differentials do not compose to zero."""


class NoStabilization(BPLocalError):
    """A colimit tower did not settle within the examined stages."""


class NotCollapsed(BPLocalError):
    """An abutment was requested for a page that is not known to collapse."""


class ExpressionError(BPLocalError, ValueError):
    """Malformed module expression."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
