"""Exception types shared across the package."""


class FrickeError(Exception):
    """Base class for all library errors."""


class ZeroSeries(FrickeError):
    """Inversion of a series with no nonzero coefficient below its precision."""


class DomainError(FrickeError):
    """Input outside the domain of a series operation (exp/log preconditions)."""


class UnsupportedWeight(FrickeError):
    """Eisenstein weight outside the supported even range."""


class FractionalExponent(FrickeError):
    """Eta quotient whose leading q-power is not an integer."""


class UnsupportedLevel(FrickeError):
    """Level outside {1, 2, 3, 5, 6}."""


class BadDiscriminant(FrickeError):
    """Discriminant argument not congruent to 0 or 3 mod 4."""


class NoSuchIndex(FrickeError):
    """Requested pole order is not a valid index for the plus space."""


class LinearAlgebraFailure(FrickeError):
    """Row reduction could not isolate the requested leading exponent."""


class NonIntegralResult(FrickeError):
    """A division that must be exact over the integers was not."""


class LowerHalfPlane(FrickeError):
    """Numerical evaluation requested at a point with Im(tau) <= 0."""


class RoundingTooLarge(FrickeError):
    """Numeric coefficients too far from integers; precision insufficient."""
