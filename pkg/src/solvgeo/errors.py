"""Exception types shared across the package."""


class SolvgeoError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SolvgeoError, ValueError):
    """An input has the wrong shape or an incompatible dimension."""


class DomainError(SolvgeoError, ValueError):
    """An input violates a mathematical precondition (symmetry, positivity, ...)."""


class ConditioningError(SolvgeoError, ArithmeticError):
    """An input is too ill-conditioned for a reliable double-precision answer."""
