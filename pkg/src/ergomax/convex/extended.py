"""
Extended reals (-inf, +inf] for grid functions.

+inf is numpy's ``inf`` and marks points outside the effective domain.
-inf and nan are never valid function values; +inf - +inf is trapped.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Sequence, Union

import numpy as np

from ergomax.core.errors import ExtendedRealError, ParseError

PLUS_INF = np.inf
_INF_TOKENS = {"+inf", "inf", "+infinity", "infinity"}

RawValue = Union[float, int, str]


@contextmanager
def trapped() -> Iterator[None]:
    """Turn invalid floating operations (inf - inf, 0 * inf) into ExtendedRealError."""
    try:
        with np.errstate(invalid="raise"):
            yield
    except FloatingPointError as e:
        raise ExtendedRealError(f"Undefined extended-real operation: {e}") from None


def ext_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a + b where +inf absorbs finite values; -inf operands are rejected."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if np.any(np.isneginf(a)) or np.any(np.isneginf(b)):
        raise ExtendedRealError("-inf is not a valid value here")
    with trapped():
        return a + b


def ext_sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a - b; raises on +inf - +inf."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    with trapped():
        return a - b


def parse_extended(values: Sequence[RawValue]) -> np.ndarray:
    """Numbers or the string '+inf' (also 'inf') per entry."""
    out = []
    for raw in values:
        if isinstance(raw, str):
            token = raw.strip().lower()
            if token in _INF_TOKENS:
                out.append(PLUS_INF)
                continue
            try:
                out.append(float(token))
            except ValueError:
                raise ParseError(f"Not an extended real: {raw!r}") from None
        elif isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ParseError(f"Not an extended real: {raw!r}")
        else:
            out.append(float(raw))
    arr = np.array(out, dtype=float)
    if np.any(np.isnan(arr)) or np.any(np.isneginf(arr)):
        raise ExtendedRealError("Function values must be real or +inf")
    return arr
