# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Errors raised by krpy. Every error carries the data that triggered it so that
callers (and the command line front end) can report it without parsing
messages.

"""

__all__ = ['KRError', 'UnsupportedAlgebraError', 'PreconditionError',
           'AlgebraMismatchError', 'NotACharacterError', 'BudgetExceededError',
           'FMInconsistencyError', 'QSystemViolationError',
           'IncomparablePartitionsError', 'SearchTruncatedError',
           'ArithmeticOverflowError', 'CacheError', 'TwoFactorMismatchError']


class KRError(Exception):
    """
    Base class for all krpy errors
    """


class UnsupportedAlgebraError(KRError, ValueError):
    def __init__(self, series, rank):
        self.series = series
        self.rank = rank
        super(UnsupportedAlgebraError, self).__init__(
            "unsupported algebra: {0}{1}".format(series, rank))


class PreconditionError(KRError, ValueError):
    """
    An argument violates the precondition of an operation
    """


class AlgebraMismatchError(KRError, ValueError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super(AlgebraMismatchError, self).__init__(
            "objects live on different algebras: {0} and {1}".format(left, right))


class NotACharacterError(KRError, ValueError):
    def __init__(self, message, weight=None):
        self.weight = weight
        super(NotACharacterError, self).__init__(message)


class BudgetExceededError(KRError):
    def __init__(self, budget, size):
        self.budget = budget
        self.size = size
        super(BudgetExceededError, self).__init__(
            "budget exceeded: {0} terms > budget of {1}".format(size, budget))


class FMInconsistencyError(KRError):
    def __init__(self, monomial, node):
        self.monomial = monomial
        self.node = node
        super(FMInconsistencyError, self).__init__(
            "FM inconsistency at monomial {0} (node {1})".format(monomial, node))


class QSystemViolationError(KRError):
    def __init__(self, algebra, node, level, coefficients):
        self.algebra = algebra
        self.node = node
        self.level = level
        self.coefficients = coefficients
        super(QSystemViolationError, self).__init__(
            "Q-system violation for {0}, node {1}, level {2}: {3}".format(
                algebra, node, level, coefficients))


class IncomparablePartitionsError(KRError, ValueError):
    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        super(IncomparablePartitionsError, self).__init__(
            "{0} is not below {1} in the reverse dominance order".format(
                lower, upper))


class SearchTruncatedError(KRError):
    def __init__(self, candidates):
        self.candidates = candidates
        super(SearchTruncatedError, self).__init__(
            "search truncated after {0} candidate products".format(candidates))


class ArithmeticOverflowError(KRError, ArithmeticError):
    def __init__(self, value, bits):
        self.value = value
        self.bits = bits
        super(ArithmeticOverflowError, self).__init__(
            "multiplicity exceeds {0} bits".format(bits))


class CacheError(KRError):
    """
    A cache document could not be read back
    """


class TwoFactorMismatchError(KRError):
    def __init__(self, algebra, node, m1, m2, expected, found):
        self.algebra = algebra
        self.node = node
        self.m1 = m1
        self.m2 = m2
        self.expected = expected
        self.found = found
        super(TwoFactorMismatchError, self).__init__(
            "dominant monomials of W_{0} (x) W_{1} on {2}, node {3} differ from "
            "the expected list: {4}".format(m1, m2, algebra, node, found))
