"""Global step budget for the rewriting engines.

Every potentially long-running loop (pair processing and reduction steps in
the Groebner engines, closure iterations, decomposition branches) ticks this
counter.  Exceeding the limit raises BudgetExceeded instead of silently
truncating a result.
"""

from __future__ import annotations

from contextlib import contextmanager

DEFAULT_STEP_LIMIT = 20_000_000

_limit = DEFAULT_STEP_LIMIT
_used = 0


class BudgetExceeded(RuntimeError):
    """Raised when the configured computation-step budget is exhausted."""


def set_step_limit(limit: int) -> None:
    global _limit
    if limit <= 0:
        raise ValueError("step limit must be positive")
    _limit = limit


def step_limit() -> int:
    return _limit


def steps_used() -> int:
    return _used


def reset_steps() -> None:
    global _used
    _used = 0


def tick(n: int = 1) -> None:
    global _used
    _used += n
    if _used > _limit:
        raise BudgetExceeded(
            f"computation budget exhausted: {_used} steps used, limit {_limit}"
        )


@contextmanager
def limited_steps(limit: int):
    """Run a block under a temporary step limit (counter restarts at 0)."""
    global _limit, _used
    old_limit, old_used = _limit, _used
    _limit, _used = limit, 0
    try:
        yield
    finally:
        _limit, _used = old_limit, old_used
