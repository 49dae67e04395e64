"""Exception hierarchy shared by the engine, CLI, and service."""
from __future__ import annotations


class StaffrankError(Exception):
    """Base class; carries a machine-readable code and a detail list."""

    code = "error"

    def __init__(self, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.message = message
        self.details: list[str] = list(details or [])


class ValidationError(StaffrankError):
    """Input data or configuration violates a documented invariant."""

    code = "validation_error"


class ShapeError(ValidationError):
    """Matrix dimensions do not agree; message names both shapes."""

    code = "shape_error"


class ComputationError(StaffrankError):
    """A procedure cannot produce a result for otherwise valid input."""

    code = "computation_error"


class DivisionByZeroError(ComputationError):
    """Element-wise division hit a zero denominator under the active policy."""

    code = "division_by_zero"

    def __init__(self, message: str, cells: list[tuple[int, int]]):
        super().__init__(message, [f"cell ({r}, {c})" for r, c in cells])
        self.cells = list(cells)
