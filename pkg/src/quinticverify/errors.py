"""Exception types shared across the library."""


class QuinticError(Exception):
    """Base class for all library-specific errors."""


class ConductorMismatch(QuinticError):
    """A value's conductor does not divide the requested conductor."""


class BadDenominator(QuinticError):
    """A coefficient denominator is divisible by the reduction prime."""


class PrimeSearchExhausted(QuinticError):
    """No suitable prime below the 2**31 search cap."""


class PolySyntaxError(QuinticError):
    """Input text violates the expression grammar; carries a position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotHomogeneous(QuinticError):
    """A parsed polynomial mixes total degrees."""


class ConductorTooSmall(QuinticError):
    """A root E(n) does not live in the declared ambient conductor."""


class DimensionMismatch(QuinticError):
    """Matrix/polynomial dimensions are incompatible."""


class SingularMatrix(QuinticError):
    """A matrix required to be invertible has determinant zero."""


class CapExceeded(QuinticError):
    """A closure or order computation exceeded its safety cap."""

    def __init__(self, cap):
        super().__init__(f"cap of {cap} exceeded")
        self.cap = cap


class NotInvariant(QuinticError):
    """A group element has no semi-invariance factor on the polynomial."""


class NotSemiInvariant(QuinticError):
    """f_lift_element requires a semi-invariant projective class."""


class InfiniteFamily(QuinticError):
    """The diagonal stabilizer is positive-dimensional."""


class RootMismatch(QuinticError):
    """A supplied root does not annihilate the binary form."""


class NotDistinct(QuinticError):
    """Supplied projective points are not pairwise distinct."""


class HyperplaneNotPreserved(QuinticError):
    """A generator does not map the hyperplane to itself."""

    def __init__(self, index):
        super().__init__(f"generator {index} does not preserve the hyperplane")
        self.index = index
