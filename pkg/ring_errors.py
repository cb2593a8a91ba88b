"""
Exception hierarchy for the ring laboratory.

Input problems (exit code 2) derive from RingInputError, cap exhaustion from
RingResourceError, and failed theorem checks or postconditions raise
InvariantViolation (exit code 1 when surfaced by the CLI).
"""

from typing import Any, Optional, Tuple


class RingInputError(ValueError):
    """Malformed tables, maps, expressions or element ids."""


class OrderOverflowError(RingInputError):
    """A constructor would produce a ring above the order cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"ring order {order} exceeds the order cap {cap}")
        self.order = order
        self.cap = cap


class RingValidationError(RingInputError):
    """Tables are well-formed but break a ring axiom."""

    def __init__(self, report: Any):
        first = report.violations[0] if report.violations else ("?", ())
        super().__init__(f"ring axiom '{first[0]}' fails at {first[1]}")
        self.report = report


class PreconditionError(RingInputError):
    """An operation was called outside its precondition."""

    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


class RingResourceError(RuntimeError):
    """A search cap was reached before the computation finished."""

    def __init__(self, message: str, partial_count: int = 0):
        super().__init__(message)
        self.partial_count = partial_count


class InvariantViolation(AssertionError):
    """A checked postcondition or theorem failed on a concrete ring."""

    def __init__(self, label: str, witness: Any = None):
        super().__init__(f"{label}: witness {witness}")
        self.label = label
        self.witness = witness
