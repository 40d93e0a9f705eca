"""Exception hierarchy shared by all modules."""


class BiharmError(Exception):
    """Base class for every error raised by the package."""


class ZeroDivisor(BiharmError, ZeroDivisionError):
    """Raised when inverting a zero divisor (or zero) of the algebra."""


class DomainError(BiharmError, ValueError):
    """Raised when a point lies outside the domain of an integral."""


class RegionError(BiharmError, ValueError):
    """Raised when a finite-difference stencil leaves its region."""


class Unsolvable(BiharmError):
    """The disk (1-3)-problem fails its solvability condition.

    The offending contour integral is kept in ``value``.
    """

    def __init__(self, value, tolerance=None):
        self.value = float(value)
        self.tolerance = tolerance
        super().__init__(f"unsolvable: contour integral = {self.value!r}")
