"""Exception hierarchy for entk."""


class EntkError(Exception):
    """Base class for all library errors."""


class ValidationError(EntkError, ValueError):
    """An input violates a documented invariant.

    ``deviation`` holds the measured size of the violation when one makes
    sense (e.g. the largest Hermiticity defect). ``violations`` lists every
    problem found when several invariants fail at once.
    """

    def __init__(self, message, deviation=None, violations=None):
        super().__init__(message)
        self.deviation = deviation
        self.violations = list(violations) if violations else [self]


class DimensionMismatch(ValidationError):
    pass


class NonHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class BadSubset(ValidationError):
    """Empty, full, or out-of-range factor subset."""


class BadBipartition(ValidationError):
    pass


class BadDimension(ValidationError):
    pass


class NotLeftUnitary(ValidationError):
    pass


class NotSymmetric(ValidationError):
    pass


class NotConjugation(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NumericalError(EntkError, ArithmeticError):
    """A numerical procedure failed to deliver its contract."""


class SeparableDominantEigenvector(NumericalError):
    """The quasi-pure approximation is undefined: the leading eigenvector is separable."""


class ValidationDrift(NumericalError):
    pass


class FitDiverged(NumericalError):
    pass


class InsufficientData(ValidationError):
    pass


class UnsupportedExactForm(EntkError, NotImplementedError):
    pass


class DimensionTooLarge(ValidationError):
    pass
