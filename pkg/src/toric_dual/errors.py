"""Exception types raised by the library."""


class ToricError(ValueError):
    """Base class for input errors."""


class ZeroVector(ToricError):
    pass


class NotPrimitive(ToricError):
    pass


class NotSublattice(ToricError):
    pass


class InvalidFraction(ToricError):
    pass


class DegenerateCone(ToricError):
    pass


class NotAVertex(ToricError):
    pass


class NotPllp(ToricError):
    pass


class NotReduced(ToricError):
    pass


class NotIsolated(ToricError):
    pass


class OracleMismatch(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Never expected; signals a geometry bug rather than bad input.
    """
