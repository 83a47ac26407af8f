"""Exception types raised across the package."""


class ShuntMuxError(Exception):
    pass


class LengthMismatch(ShuntMuxError, ValueError):
    pass


class Infeasible(ShuntMuxError):
    """A design cannot be built for the requested detector count.

    ``max_n`` is the largest count the same inputs do support and ``cause``
    names the constraint that broke: ``"m_L"`` (loading limit),
    ``"R_N"`` (parallel resistance reaching the normal resistance) or
    ``"denominator"`` (recurrence denominator no longer positive).
    """

    def __init__(self, message, max_n=0, cause=""):
        super().__init__(message)
        self.max_n = max_n
        self.cause = cause


class InfeasibleLevel(Infeasible):
    pass


class NotSupported(ShuntMuxError):
    pass


class EnumerationBoundError(ShuntMuxError, ValueError):
    pass


class DecodeError(ShuntMuxError):
    pass


class AmbiguousDesign(DecodeError):
    pass


class OutOfRange(DecodeError):
    pass
