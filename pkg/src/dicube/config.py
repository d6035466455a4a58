"""Shared enumeration budgets and error types."""

import os

DEFAULT_BUDGET = 10**6

BUDGET_ENV_VAR = "DICUBE_BUDGET"


class BudgetExceeded(RuntimeError):
    """An enumeration was about to exceed its configured budget.

    Raised instead of silently truncating; callers must either raise the
    budget or shrink the instance.
    """


def default_budget():
    value = os.environ.get(BUDGET_ENV_VAR)
    if value is None:
        return DEFAULT_BUDGET
    budget = int(value)
    if budget <= 0:
        raise ValueError("budget must be positive")
    return budget


class Budget:
    """Counts enumeration steps and aborts once the limit is hit."""

    def __init__(self, limit=None):
        self.limit = default_budget() if limit is None else limit
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.used = 0

    def spend(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(
                f"enumeration budget exceeded ({self.used} > {self.limit})"
            )
