"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """A computation was cut off by an explicit size or time budget.

    Raised instead of returning a possibly-wrong answer; callers that can
    report partial results catch it and set a truncation flag instead.
    """


class InputError(ValueError):
    """Malformed input data (bad JSON shape, invariant violations)."""
