"""
Domain errors. Every error carries a short code used by the CLI error line.
"""


class WeakOrderError(ValueError):
    """Base class for all computation errors."""

    code = 'error'

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class RankOutOfRangeError(WeakOrderError):
    code = 'range'


class UnclassifiableComponentError(WeakOrderError):
    code = 'classify'


class ModelMismatchError(WeakOrderError):
    code = 'model'


class InvalidElementError(WeakOrderError):
    code = 'parse'


class EnumerationBudgetError(WeakOrderError):
    code = 'budget'


class NotComparableError(WeakOrderError):
    code = 'comparable'


class NotALatticeError(WeakOrderError):
    code = 'lattice'


class DescentSetError(WeakOrderError):
    code = 'descent-set'


class InteriorConditionError(WeakOrderError):
    code = 'interior'


class SeriesError(WeakOrderError):
    code = 'series'


class UsageError(WeakOrderError):
    code = 'usage'


class VerificationFailure(WeakOrderError):
    code = 'verify'
