"""Exception hierarchy shared by all modules."""


class IndexCodingError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(IndexCodingError):
    pass


class NotPrimePower(InvalidInput):
    pass


class Unsupported(InvalidInput):
    pass


class UnsupportedField(Unsupported):
    pass


class DimensionMismatch(InvalidInput):
    pass


class ParseError(InvalidInput):
    pass


class LoopError(ParseError):
    pass


class RangeError(ParseError):
    pass


class TooLarge(InvalidInput):
    pass


class BadParameters(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


class InvalidWitness(InvalidInput):
    pass


class InvalidCode(InvalidInput):
    pass


class UnverifiedFunction(InvalidInput):
    pass


class BudgetExceeded(IndexCodingError):
    """A search would enumerate more candidates than the configured budget."""

    def __init__(self, needed, budget, what="search"):
        super().__init__(f"{what} needs {needed} candidates, budget is {budget}")
        self.needed = needed
        self.budget = budget
        self.what = what


class PropertyViolation(IndexCodingError):
    """An invariant that must hold by theory failed on a concrete instance."""
