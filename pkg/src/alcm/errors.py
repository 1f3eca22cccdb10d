"""Exception types shared across the package."""


class BudgetExceededError(Exception):
    """A resource cap was hit before the procedure could reach a verdict."""


class UnknownNameError(Exception):
    """A query referred to an individual that does not occur in the KB."""
