"""Exception types raised by gsn_option."""


class DomainError(ValueError):
    """An argument is outside the domain of a function (NaN, non-finite, ...)."""


class InvalidParameterError(ValueError):
    """A parameter object failed validation."""


class SingularTruncationError(ArithmeticError):
    """A truncation interval carries (numerically) zero probability mass."""


class NumericalRegimeError(ArithmeticError):
    """A closed-form evaluation left the range where it can be computed reliably."""
