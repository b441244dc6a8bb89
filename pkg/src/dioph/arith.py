"""Exact integer helpers with the two remainder conventions the solvers use.

``div_floor`` gives the least non-negative remainder (used by the gcd-descent
solvers), ``least_abs_residue`` the remainder of minimal absolute value (used
by the congruence solvers).  Everything is plain Python ``int``; rationals are
``fractions.Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable

__all__ = [
    "Fraction",
    "NoResidue",
    "div_floor",
    "gcd_many",
    "least_abs_residue",
]


class NoResidue(ArithmeticError):
    """Raised by :func:`least_abs_residue` when the modulus divides the value."""


def gcd_many(xs: Iterable[int]) -> int:
    """Non-negative gcd of all arguments; the gcd of an all-zero list is 0."""
    xs = list(xs)
    if not xs:
        raise ValueError("gcd_many needs at least one value")
    return reduce(math.gcd, xs, 0)


def div_floor(a: int, m: int) -> tuple[int, int]:
    """Return ``(q, r)`` with ``a == m*q + r`` and ``0 <= r < |m|``."""
    if m == 0:
        raise ZeroDivisionError("div_floor by zero")
    r = a % abs(m)
    return (a - r) // m, r


def least_abs_residue(a: int, m: int) -> int:
    """Residue ``r`` of ``a`` modulo ``m`` with minimal ``|r|``.

    Ties between ``+|m|/2`` and ``-|m|/2`` resolve to the positive value.
    Raises :class:`NoResidue` when ``m`` divides ``a``.
    """
    if m == 0:
        raise ZeroDivisionError("least_abs_residue modulo zero")
    m = abs(m)
    r = a % m
    if r == 0:
        raise NoResidue(f"{m} divides {a}")
    if 2 * r > m:
        r -= m
    return r


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1
