"""
The :mod:`coboson.exceptions` module includes all custom warnings and
error classes used across coboson.
"""

# License: MIT


__all__ = ['CobosonError',
           'EmptyInputError',
           'NegativeCoefficientError',
           'NotNormalizedError',
           'OutOfRangeError',
           'InfeasiblePairError',
           'SamplingExhaustedError',
           'CancellationFailureError',
           'TooLargeError',
           'UndefinedError',
           'DegeneratePeakedError',
           'STooSmallError',
           'IndexOutOfRangeError',
           'TouchesLambda1Error',
           'NotApplicableError',
           'HierarchyViolation']


class CobosonError(ValueError):
    """Base class for the user-facing errors raised by coboson."""


class EmptyInputError(CobosonError):
    """Raised when a distribution is built from an empty sequence."""


class NegativeCoefficientError(CobosonError):
    """Raised when a Schmidt coefficient is negative beyond roundoff."""


class NotNormalizedError(CobosonError):
    """Raised when the coefficients do not sum to one and
    renormalization was not requested."""


class OutOfRangeError(CobosonError):
    """Raised when a scalar argument lies outside its domain."""


class InfeasiblePairError(CobosonError):
    """Raised when no distribution has the requested purity and
    largest Schmidt coefficient."""


class SamplingExhaustedError(CobosonError):
    """Raised when the constrained sampler rejects every attempt."""


class CancellationFailureError(CobosonError):
    """Raised when the alternating Newton-Girard sum loses all precision.

    The positive-term ESP engine should be used instead.
    """


class TooLargeError(CobosonError):
    """Raised when the brute-force oracle is asked for too many modes."""


class UndefinedError(CobosonError):
    """Raised when a quantity involves a quotient by a vanishing
    normalization factor."""


class DegeneratePeakedError(CobosonError):
    """Raised when the minimizing distribution collapses onto the
    peaked distribution, i.e. the largest coefficient equals the
    square root of the purity."""


class STooSmallError(OutOfRangeError):
    """Raised when a finite maximizing distribution cannot host
    the requested pair with the given number of modes."""


class IndexOutOfRangeError(CobosonError, IndexError):
    """Raised when a coefficient triple is not a valid index triple."""


class TouchesLambda1Error(IndexOutOfRangeError):
    """Raised when a triple operation would act on the largest coefficient."""


class NotApplicableError(CobosonError):
    """Raised when a smooth bound is evaluated outside its domain."""


class HierarchyViolation(AssertionError):
    """Raised when the bound hierarchy fails its internal self-check.

    The hierarchy is a theorem, so a violation signals an
    implementation defect rather than bad user input.
    """
