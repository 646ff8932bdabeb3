"""Exception types shared across the library."""


class AcikitError(Exception):
    """Base class for all library errors."""


class RingMismatchError(AcikitError):
    """Operands live in different rings."""


class NotHomogeneousError(AcikitError):
    """A polynomial expected to be homogeneous has terms of distinct degree."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness  # pair of (monomial, degree) tuples when known


class ZeroPolynomialError(AcikitError):
    """The zero polynomial has no degree / leading term."""


class DegreeCapExceededError(AcikitError):
    """A computation hit its degree cap.  Results are never silently truncated."""


class LiftFailedError(AcikitError):
    """A column could not be lifted through the image of a map."""


class GradeMismatchError(AcikitError):
    """Input ideal does not satisfy mu = grade + 1."""


class HypothesisViolatedError(AcikitError):
    """A formula was invoked outside its hypotheses (e.g. last degree not maximal)."""


class UsageError(AcikitError):
    """Bad CLI arguments or malformed input files."""
