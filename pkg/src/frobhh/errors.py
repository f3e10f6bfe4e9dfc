"""Exception hierarchy.

Errors split into two families the CLI maps to exit code 2: bad input
(``InputError``) and unmet hypotheses (``HypothesisFailure``).  Everything
else deriving from ``FrobHHError`` signals an internal inconsistency.
"""


class FrobHHError(Exception):
    """Base class for all library errors."""


class InputError(FrobHHError):
    pass


class NotPrime(InputError):
    pass


class NoRoot(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NoSolution(FrobHHError):
    pass


class NotInvertible(FrobHHError):
    pass


class CapExceeded(FrobHHError):
    pass


class BadRoot(InputError):
    pass


class NotPrimitivePower(InputError):
    pass


class NotAssociative(InputError):
    pass


class ParseError(InputError):
    pass


class NotFrobeniusWithinAttempts(FrobHHError):
    pass


class InconsistentSystem(FrobHHError):
    pass


class HypothesisFailure(FrobHHError):
    pass


class NotStronglyGraded(HypothesisFailure):
    pass


class DegreeTooLarge(FrobHHError):
    pass


class NoIntegral(FrobHHError):
    pass


class IntegralSpaceNotOneDim(FrobHHError):
    pass


class InconsistentModular(FrobHHError):
    pass


class ConventionMismatch(FrobHHError):
    pass
