"""
Error hierarchy for banditboost.

Parameter and shape errors also derive from ValueError so callers that only
know the builtin still catch them.
"""


class BanditBoostError(Exception):
    """Base class for every error raised by the library."""


class InvalidParameterError(BanditBoostError, ValueError):
    """A numeric parameter is outside its allowed range (rho, gamma, N, clip bound...)."""


class InvalidSpaceError(BanditBoostError, ValueError):
    """Label space too small or a label outside 1..k."""


class InvalidArgumentError(BanditBoostError, ValueError):
    """Arguments disagree in shape or type."""


class ZeroProbabilityError(InvalidParameterError, ZeroDivisionError):
    """The sampled label had probability zero, so no importance weight exists."""


class InvalidStateError(BanditBoostError):
    """Object state cannot support the requested operation."""


class BudgetExceededError(BanditBoostError):
    """Exact potential evaluation would enumerate more leaves than allowed."""

    def __init__(self, leaves: int, budget: int):
        super().__init__(f"exact potential needs {leaves} leaves, budget is {budget}")
        self.leaves = leaves
        self.budget = budget


class FeedbackError(BanditBoostError):
    """The feedback channel failed; the round was aborted."""


class ConfigError(BanditBoostError):
    """Configuration is unreadable, inconsistent or names unknown keys."""


class DataLoadError(BanditBoostError):
    """Base class for dataset ingestion errors."""


class DatasetNotFoundError(DataLoadError):
    def __init__(self, path):
        super().__init__(f"dataset not found: {path}")
        self.path = path


class MissingColumnError(DataLoadError):
    pass


class NonNumericFeatureError(DataLoadError):
    pass


class MissingValueError(DataLoadError):
    pass


class EmptyDatasetError(DataLoadError):
    pass


class ReportFormatError(DataLoadError):
    """A saved report does not match the expected schema."""
