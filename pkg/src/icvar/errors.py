"""Exception hierarchy.

Three families map onto CLI exit codes: configuration problems (2), bad input
data (3) and solver numerical breakdown (4).
"""


class IcvarError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(IcvarError, ValueError):
    pass


class DataError(IcvarError, ValueError):
    pass


class NumericalBreakdown(IcvarError, ArithmeticError):
    pass


# --- configuration / argument errors -------------------------------------

class AlphaOutOfRange(ConfigError):
    pass


class DimensionMismatch(ConfigError):
    pass


class BoundariesOutOfRange(ConfigError):
    pass


class TooManyAssets(ConfigError):
    pass


# --- data errors ---------------------------------------------------------

class MalformedRow(DataError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonPositivePrice(MalformedRow):
    pass


class OrderViolation(MalformedRow):
    pass


class DuplicateDate(MalformedRow):
    pass


class InsufficientData(DataError):
    pass


class EmptyPeriod(DataError):
    pass


class EmptySample(DataError):
    pass


class DegenerateSample(DataError):
    pass


class ZeroWidthPair(ValueError):
    """Both intervals are degenerate, so the acceptability index is undefined.

    Callers fall back to an ordinary real comparison.
    """
