"""Finite check of inf_x sup_y F >= sup_y inf_x F."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ergomax.core.errors import DegenerateInputError, ParseError


@dataclass(frozen=True)
class MinimaxCheck:
    inf_of_row_sups: float
    sup_of_col_infs: float
    holds: bool


def minimax_inequality_check(F: ArrayLike) -> MinimaxCheck:
    """Rows index the outer inf variable, columns the outer sup variable."""
    try:
        matrix = np.asarray(F, dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Matrix is not numeric: {e}") from None
    if matrix.ndim != 2:
        raise ParseError(f"Expected a 2-D matrix, got {matrix.ndim} dimensions")
    if matrix.size == 0:
        raise DegenerateInputError("Matrix is empty")

    upper = float(matrix.max(axis=1).min())
    lower = float(matrix.min(axis=0).max())
    return MinimaxCheck(inf_of_row_sups=upper, sup_of_col_infs=lower, holds=upper >= lower)
