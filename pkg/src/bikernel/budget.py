from __future__ import annotations

import os

from .errors import EnumerationBudgetExceeded

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    raw = os.environ.get("BIKERNEL_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError("BIKERNEL_BUDGET must be at least 1")
    return value


class Budget:
    """Counts enumerated candidate tuples and stops once the limit is crossed."""

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    def charge(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise EnumerationBudgetExceeded(
                f"enumeration needs more than {self.limit} candidate tuples"
            )


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


def tup(*parts: str) -> str:
    """Token for an ordered tuple of tokens."""
    return "(" + ",".join(parts) + ")"
