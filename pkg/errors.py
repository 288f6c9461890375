# errors.py
"""Exception types shared by every module of the reduction toolkit."""


class AlgebraError(ValueError):
    """Base class for every error raised by the toolkit."""


class DomainMismatch(AlgebraError):
    pass


class NotAField(AlgebraError):
    pass


class NotSquare(AlgebraError):
    pass


class EnumerationTooLarge(AlgebraError):
    pass


class NotAHopfIdeal(AlgebraError):
    def __init__(self, message, failed_flags=None):
        super().__init__(message)
        self.failed_flags = list(failed_flags or [])


class TowerMismatch(AlgebraError):
    pass


class VariableOutOfLevel(AlgebraError):
    pass


class DegreeBoundExceeded(AlgebraError):
    pass


class StabilizationNotReached(AlgebraError):
    pass


class NotFaithfulAtBound(AlgebraError):
    def __init__(self, message, degree_bound=None, rank=None):
        super().__init__(message)
        self.degree_bound = degree_bound
        self.rank = rank


class CentralityFailed(AlgebraError):
    pass


class PPolynomialSearchExceeded(AlgebraError):
    def __init__(self, message, k_max=None):
        super().__init__(message)
        self.k_max = k_max


class NotFreeOverBase(AlgebraError):
    pass


class ReductionMismatch(AlgebraError):
    pass


class NotSemisimple(AlgebraError):
    pass


class DenominatorVanishes(AlgebraError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ValidationError(AlgebraError):
    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])
