"""Exception types shared across the package."""


class CurveBoundsError(Exception):
    """Base class for every error raised by this package."""


class NegativeRadicand(CurveBoundsError):
    """A square root was taken of a value with certified negative upper bound."""


class PrecisionExhausted(CurveBoundsError):
    """Interval refinement hit the precision cap without separating the value
    from an integer."""


class NotPrime(CurveBoundsError):
    """Field characteristic is not a prime number."""


class TooLarge(CurveBoundsError):
    """Requested field exceeds the enumeration limit."""


class CurveSyntaxError(CurveBoundsError):
    """Polynomial text could not be parsed."""


class NotHomogeneous(CurveBoundsError):
    """Parsed polynomial has terms of different total degrees."""


class ZeroPolynomial(CurveBoundsError):
    """All coefficients vanish after reduction into the field."""


class OddDifference(CurveBoundsError):
    """N2 - N1 is odd, so no degree-2 closed-point count can be derived."""


class NegativeDifference(CurveBoundsError):
    """N2 < N1; signals a non-smooth model or a counting bug."""


class GenusZero(CurveBoundsError):
    """Operation requires genus >= 1."""


class CatalogMiss(CurveBoundsError):
    """Required N_q(g) value is absent from the catalog, or only known as an
    interval where an exact value is needed."""


class BelowValidityThreshold(CurveBoundsError):
    """Bound requested below the genus threshold where it is proved."""


class CatalogParseError(CurveBoundsError):
    """Catalog TSV file is malformed."""


class WeilWindowViolation(CurveBoundsError):
    """Catalog row falls outside the Weil window for (q, g)."""


class NotSquare(CurveBoundsError):
    """Operation requires q to be a perfect square."""


class OrderTooLarge(CurveBoundsError):
    """Feasibility order n exceeds the supported cap (minor count is 2^(n+1)-1)."""


class OutOfCube(CurveBoundsError):
    """Coordinate lies outside [-1, 1]."""
