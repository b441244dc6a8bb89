"""Input checks that turn array-likes into exact Python integers."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import numpy as np


def _exact(v, what: str) -> int:
    if isinstance(v, (bool, np.bool_)):
        raise TypeError(f"{what}: booleans are not integers")
    if isinstance(v, Integral):
        return int(v)
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, (float, np.floating)):
        if np.isfinite(v) and float(v).is_integer():
            return int(v)
    raise ValueError(f"{what}: {v!r} is not an integer")


def check_int_matrix(A, name: str = "A") -> list[list[int]]:
    """2-D array-like of integral values -> list of lists of ``int``."""
    if isinstance(A, np.ndarray):
        if A.ndim != 2:
            raise ValueError(f"{name} must be 2-dimensional, got {A.ndim} dimensions")
        rows = A.tolist() if A.dtype != object else [list(r) for r in A]
    else:
        rows = [list(r) for r in A]
    if not rows or not rows[0]:
        raise ValueError(f"{name} must be non-empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{name} is ragged")
    return [[_exact(v, name) for v in r] for r in rows]


def check_int_vector(b, length: int | None = None, name: str = "b") -> list[int]:
    if isinstance(b, np.ndarray):
        if b.ndim != 1:
            raise ValueError(f"{name} must be 1-dimensional")
        vals = b.tolist() if b.dtype != object else list(b)
    else:
        vals = list(b)
    if length is not None and len(vals) != length:
        raise ValueError(f"{name} has {len(vals)} entries, expected {length}")
    return [_exact(v, name) for v in vals]
