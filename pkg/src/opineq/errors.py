"""Exception types raised across the package."""


class OpineqError(Exception):
    """Base class for all package errors."""


class MatrixError(OpineqError, ValueError):
    """Malformed matrix input (shape, non-finite entries, asymmetry)."""


class NotPSD(OpineqError, ValueError):
    pass


class SingularPower(OpineqError, ValueError):
    """A non-positive power of a singular PSD operator was requested."""


class HypothesisNotSatisfied(OpineqError):
    """The caller asserted a hypothesis that the inputs do not meet."""


class SupportMismatch(HypothesisNotSatisfied):
    """Support projections U*U and V*V differ beyond tolerance."""


class EqualityNotAttained(HypothesisNotSatisfied):
    pass


class RootNotFound(OpineqError):
    """No sign-changing bracket was found for a scalar equation."""


class TheoremViolation(OpineqError, AssertionError):
    """A computed instance contradicts a proven statement.

    Only ever raised when numerical output disagrees with a theorem, so it
    indicates either a bug or a tolerance problem.
    """
