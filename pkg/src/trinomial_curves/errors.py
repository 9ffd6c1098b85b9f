"""Exception types shared across the package."""


class TrinomialCurveError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(TrinomialCurveError):
    pass


class FieldTooLarge(TrinomialCurveError):
    pass


class DivisionByZero(TrinomialCurveError):
    pass


class DlogOfZero(TrinomialCurveError):
    pass


class SingularB(TrinomialCurveError):
    pass


class RankDeficient(TrinomialCurveError):
    pass


class TableTooLarge(TrinomialCurveError):
    pass


class NegativeExponent(TrinomialCurveError):
    pass


class InvalidOrders(TrinomialCurveError):
    pass


class InvalidCase(TrinomialCurveError):
    pass


class UnnormalizedExponents(TrinomialCurveError):
    pass


class NonIntegralGenus(TrinomialCurveError):
    pass


class NegativeGenus(TrinomialCurveError):
    pass


class GenusMismatch(TrinomialCurveError):
    """Delta-invariant genus disagrees with the closed form; never patched silently."""


class NotOddPrime(TrinomialCurveError):
    pass


class NoSolution(TrinomialCurveError):
    pass


class LawViolation(TrinomialCurveError):
    """A certified identity failed; firing this falsifies a proven statement."""
