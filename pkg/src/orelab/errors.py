"""Exception types and the shared evaluation budget."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**6


class OreLabError(Exception):
    """Base class for all library errors."""


class RingMismatchError(OreLabError, TypeError):
    """Operands live in different rings."""


class DescriptorError(OreLabError, ValueError):
    """Malformed or unsupported ring descriptor."""


class MorphismError(OreLabError, ValueError):
    """Unknown morphism name, or a name that does not apply to the ring."""


class LawViolation(OreLabError, ValueError):
    """A map failed its law check at construction time."""


class PrecisionError(OreLabError, ValueError):
    """Mixed precision, or a value outside the representable truncation."""


class DegreeBoundError(OreLabError, ValueError):
    """A free-ring word exceeded the configured degree bound."""


class BudgetExceeded(OreLabError, RuntimeError):
    """An exhaustive computation would exceed its evaluation budget."""


class PreconditionError(OreLabError, ValueError):
    """An operation was called outside its documented precondition."""


class NotEnumerableError(OreLabError, TypeError):
    """Exhaustive operation requested on a ring without an enumerator."""


def evaluation_budget(budget: int | None = None) -> int:
    """Resolve a budget: explicit value, else ``ORELAB_BUDGET``, else 10**6."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("ORELAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise OreLabError(f"ORELAB_BUDGET must be an integer, got {env!r}") from exc
    return DEFAULT_BUDGET
