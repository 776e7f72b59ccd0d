"""Exception types shared across the package."""


class AlgDiffError(Exception):
    """Base class for errors raised by algdiff."""


class FieldMismatch(AlgDiffError, ValueError):
    pass


class HypothesisError(AlgDiffError):
    """A hypothesis required by an algorithm does not hold.

    ``hypothesis`` is a short tag ("H", "H_b", "H'", ...) and ``shift`` the
    smallest nonnegative integer a at which the hypothesis would hold after
    X -> X + a, when such a suggestion makes sense.
    """

    def __init__(self, hypothesis: str, message: str, shift: int | None = None):
        self.hypothesis = hypothesis
        self.shift = shift
        text = f"{hypothesis}: {message}"
        if shift is not None:
            text += f"; try --shift {shift}"
        super().__init__(text)


class ReconstructionError(AlgDiffError):
    """Rational reconstruction did not produce a consistent answer."""


class ZeroDivisorFound(AlgDiffError, ZeroDivisionError):
    """A nonzero non-invertible element was met in K[Y]/(p).

    ``factor`` is gcd(rep(a), p), a proper factor of the modulus.
    """

    def __init__(self, factor, message: str = "zero divisor"):
        self.factor = factor
        super().__init__(message)


class NotFound(AlgDiffError):
    """A search finished without a solution in the requested space."""
