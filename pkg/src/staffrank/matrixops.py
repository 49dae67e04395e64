"""Small dense-matrix kernel every analytics procedure builds on.

All functions take and return float64 numpy arrays and perform the
validation the rest of the engine relies on (shape agreement, sign
checks, zero-denominator policies).  Inputs are never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZeroError, ShapeError, ValidationError

__all__ = [
    "DivisionPolicy",
    "mat_mul",
    "transpose",
    "row_normalize",
    "elementwise_mul",
    "elementwise_div",
]


@dataclass(frozen=True)
class DivisionPolicy:
    """What elementwise_div does when a denominator entry is zero.

    kind "strict" refuses any zero denominator, "zero_for_zero" maps
    0/0 to 0 but refuses x/0 for x > 0, and "epsilon" substitutes the
    configured epsilon for zero denominators.
    """

    kind: str = "strict"
    epsilon: float = 1e-9

    KINDS = ("strict", "zero_for_zero", "epsilon")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValidationError(
                f"unknown zero-division policy {self.kind!r}; expected one of {', '.join(self.KINDS)}"
            )
        if self.kind == "epsilon" and not self.epsilon > 0:
            raise ValidationError(f"epsilon policy needs a positive epsilon, got {self.epsilon}")


def _as_matrix(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be two-dimensional, got shape {arr.shape}")
    return arr


def mat_mul(a, b) -> np.ndarray:
    """Standard matrix product; inner dimensions must agree."""
    a = _as_matrix(a, "left operand")
    b = _as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}: "
            "inner dimensions differ"
        )
    return a @ b


def transpose(a) -> np.ndarray:
    return _as_matrix(a, "operand").T.copy()


def row_normalize(a) -> tuple[np.ndarray, tuple[int, ...]]:
    """Scale every row to sum 1.

    All-zero rows cannot be scaled; they stay all-zero and their indices
    are returned so callers can flag the result as degenerate.  Negative
    entries are rejected: shares of a negative quantity are undefined.
    """
    a = _as_matrix(a, "operand")
    if np.any(a < 0):
        rows = sorted(set(np.argwhere(a < 0)[:, 0].tolist()))
        raise ValidationError(f"row_normalize requires non-negative entries; negative values in rows {rows}")
    sums = a.sum(axis=1)
    degenerate = tuple(int(i) for i in np.flatnonzero(sums == 0))
    safe = np.where(sums == 0, 1.0, sums)
    return a / safe[:, None], degenerate


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"element-wise operation needs identical shapes, got {a.shape} and {b.shape}")


def elementwise_mul(a, b) -> np.ndarray:
    a = _as_matrix(a, "left operand")
    b = _as_matrix(b, "right operand")
    _check_same_shape(a, b)
    return a * b


def elementwise_div(a, b, policy: DivisionPolicy = DivisionPolicy()) -> np.ndarray:
    """Element-wise a / b with zero denominators handled per policy."""
    a = _as_matrix(a, "numerator")
    b = _as_matrix(b, "denominator")
    _check_same_shape(a, b)
    if np.any(a < 0) or np.any(b < 0):
        raise ValidationError("element-wise division requires non-negative entries")

    zero = b == 0
    if policy.kind == "epsilon":
        b = np.where(zero, policy.epsilon, b)
        return a / b
    if policy.kind == "strict":
        offending = zero
    else:  # zero_for_zero: only x/0 with x > 0 is an error
        offending = zero & (a > 0)
    if np.any(offending):
        cells = [(int(r), int(c)) for r, c in np.argwhere(offending)]
        raise DivisionByZeroError(
            f"division by zero at {len(cells)} cell(s) under policy {policy.kind!r}", cells
        )
    out = np.divide(a, np.where(zero, 1.0, b))
    out[zero] = 0.0
    return out
