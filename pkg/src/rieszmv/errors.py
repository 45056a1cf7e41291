"""Exceptions shared across the package."""


class BudgetExceededError(RuntimeError):
    """A combinatorial bound was hit before the computation finished.

    Carries the offending size so callers can report it and retry with a
    larger budget instead of silently approximating.
    """

    def __init__(self, message, size, budget):
        super().__init__(f"{message}: required {size}, budget {budget}")
        self.size = size
        self.budget = budget


class RangeViolationError(ValueError):
    """A piecewise-linear function leaves [0, 1] where it must not.

    ``point`` is a witness where the range constraint fails.
    """

    def __init__(self, message, point, value):
        super().__init__(f"{message} at {point}: value {value}")
        self.point = point
        self.value = value
