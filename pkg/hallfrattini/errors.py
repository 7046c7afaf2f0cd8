"""
Exception hierarchy for the Hall/Frattini engine.
"""

from typing import Optional


class GroupEngineError(Exception):
    """Base class for all engine errors."""


class ParseError(GroupEngineError):
    """Syntax or semantic error in a group expression or group file."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class UnsupportedAtomError(GroupEngineError):
    """Unknown atom name or parameters outside the supported range."""


class InvalidAutomorphismError(GroupEngineError):
    """Generator images do not extend to a bijective homomorphism."""


class ContainmentError(GroupEngineError):
    """A subgroup argument is not contained in the group it is used with."""


class PreconditionError(GroupEngineError):
    """An operation was called outside its stated hypotheses."""


class BoundExceededError(GroupEngineError):
    """A configured resource bound (degree, order, enumeration size) was exceeded."""

    def __init__(self, message: str, bound_name: str = "", value: int = 0, limit: int = 0):
        self.bound_name = bound_name
        self.value = value
        self.limit = limit
        super().__init__(message)


class NotEPiError(GroupEngineError):
    """The group has no pi-Hall subgroup, so the theorem's hypothesis fails."""


class HypothesisViolation(GroupEngineError):
    """A cited lemma or theorem would be falsified; always an implementation bug."""


class StepAssertionError(HypothesisViolation):
    """A step-local postcondition of the constructive Frattini path failed."""

    def __init__(self, step: str, message: str):
        self.step = step
        super().__init__(f"[{step}] {message}")
