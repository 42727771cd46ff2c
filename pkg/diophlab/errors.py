from fractions import Fraction
from typing import Any, Optional


class DiophlabError(Exception):
    pass


class ExpansionExhausted(DiophlabError):
    """A finite continued fraction was asked for a convergent it does not have.

    The number is then rational and equal to ``last_convergent``.
    """

    def __init__(self, index: int, last_convergent: Fraction):
        super().__init__("Expansion ends before index {}; the number equals {}".format(index, last_convergent))
        self.index = index
        self.last_convergent = last_convergent


class ResourceLimitError(DiophlabError):

    def __init__(self, message: str, best: Optional[Any] = None):
        super().__init__(message)
        self.best = best


class BudgetExceededError(ResourceLimitError):

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message, best=partial)
        self.partial = partial


class UnsupportedDegreeError(DiophlabError, ValueError):
    pass


class NoWitnessError(DiophlabError, ValueError):
    pass


class PreconditionViolation(DiophlabError, ValueError):
    pass


class ConfigError(DiophlabError, ValueError):
    pass


class IncompatibleEstimatesError(DiophlabError, ValueError):
    pass
