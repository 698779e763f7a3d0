"""
Exception hierarchy for the cograph toolkit.
The command line maps these onto exit codes (2 for rejected input, 3 for budgets).
"""

from typing import Any, Sequence


class CographToolkitError(Exception):
    """Base class for every error raised on purpose by the toolkit."""


class BudgetExceededError(CographToolkitError):
    """A search ran past its configured node or size budget."""

    def __init__(self, operation: str, budget: int) -> None:
        self.operation: str = operation
        self.budget: int = budget
        super().__init__(f"{operation} exceeded its budget of {budget}")


class UndecidedError(BudgetExceededError):
    """A chain embedding question was left open within the step budget."""


class InvalidInputError(CographToolkitError, ValueError):
    """An argument violates the precondition of the operation it was passed to."""


class NotACographError(InvalidInputError):
    """The graph contains an induced path on four vertices."""

    def __init__(self, witness: Sequence[int]) -> None:
        self.witness: tuple[int, ...] = tuple(witness)
        super().__init__(
            "not a cograph: induced P4 " + " ".join(str(v) for v in self.witness)
        )


class InvalidTreeError(InvalidInputError):
    """A valued meet-tree failed validation."""

    def __init__(self, report: Any) -> None:
        self.report = report
        super().__init__(f"invalid tree: {report}")


class NotRobustError(InvalidInputError):
    """A vertex set is not a robust module with at least two elements."""


class AnchorShortageError(InvalidInputError):
    """A prefix has fewer anchors than the bit word being encoded."""


class MalformedPrefixError(InvalidInputError):
    """A prefix does not carry the inserted blocks of an encoded bit word."""


class UnsupportedChainError(InvalidInputError):
    """A chain shape is outside what the operation can decide."""
