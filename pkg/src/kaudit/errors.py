"""Exception hierarchy shared by every kaudit module."""


class KauditError(Exception):
    """Base class for all kaudit errors."""


class InvalidMatrix(KauditError):
    """Matrix entries are non-finite or the shape is not square."""


class DimensionError(KauditError):
    """Operand dimensions do not agree."""


class DomainError(KauditError):
    """A scalar function was evaluated outside its domain, or an argument
    lies outside the interval it must belong to."""


class NotPositive(KauditError):
    """An operation requiring a positive operator received one with
    lambda_min <= 0."""


class RegimeError(KauditError):
    """The (m, M, k, K, q) parameters do not satisfy the hypotheses of the
    requested bound; carries the failed conditions."""

    def __init__(self, message, regime=None):
        super().__init__(message)
        self.regime = regime


class DegenerateError(KauditError):
    """K == k or mK - Mk == 0: the extremum formulas have a pole."""


class PreconditionError(KauditError):
    """A checker precondition (certificate, parameter range, operator
    order) does not hold."""


class ConvergenceError(KauditError):
    """The eigensolver hit its sweep cap before reducing the off-diagonal
    mass below tolerance."""
