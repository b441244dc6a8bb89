"""Independent validation of solver output.

Nothing here calls a solver.  Verification is exact; generality is checked
against every particular solution inside the box ``[-B, B]^n``, which is
the only finite surrogate for the quantifier over all integer solutions.
Two lattices are called equivalent when both cover the box and have the
same parameter count.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .model import GeneralSolution, LinearSystem, matrix_rank, rank_and_reduce

__all__ = [
    "BoxResult",
    "BudgetExceeded",
    "CheckResult",
    "StructureReport",
    "brute_particulars",
    "enumeration_budget",
    "equivalent_on_box",
    "is_general_on_box",
    "membership",
    "rational_parameters",
    "structure_checks",
    "verify_particular",
    "verify_symbolic",
]

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 18
_INT64_SAFE = 2**62


class BudgetExceeded(RuntimeError):
    """Enumeration refused because the box holds too many candidate points."""


def enumeration_budget() -> int:
    raw = os.environ.get("DIOPH_ENUM_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"DIOPH_ENUM_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("DIOPH_ENUM_BUDGET must be positive")
    return value


def _check_dims(sys: LinearSystem, n: int) -> None:
    if n != sys.n:
        raise ValueError(f"dimension mismatch: system has {sys.n} variables, got {n}")


# -- exact verification ----------------------------------------------------


def verify_particular(sys: LinearSystem, x: Sequence[int]) -> bool:
    x = tuple(x)
    _check_dims(sys, len(x))
    return all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(sys.A, sys.b))


def verify_symbolic(sys: LinearSystem, gs: GeneralSolution) -> bool:
    """``A C = 0`` and ``A d = b``; by linearity this covers every integer ``k``."""
    _check_dims(sys, gs.n)
    for row, bi in zip(sys.A, sys.b):
        if sum(a * di for a, di in zip(row, gs.d)) != bi:
            return False
        for j in range(gs.p):
            if sum(a * c[j] for a, c in zip(row, gs.C)):
                return False
    return True


# -- membership ------------------------------------------------------------


def rational_parameters(gs: GeneralSolution, x0: Sequence[int]) -> tuple[Fraction, ...] | None:
    """The unique rational ``k`` with ``C k = x0 - d``, or None if none exists."""
    x0 = tuple(x0)
    if len(x0) != gs.n:
        raise ValueError(f"point has {len(x0)} entries, lattice has {gs.n} variables")
    target = [xi - di for xi, di in zip(x0, gs.d)]
    if gs.p == 0:
        return () if not any(target) else None
    sys = LinearSystem(None, gs.C, target)
    red = rank_and_reduce(sys)
    if not hasattr(red, "exprs"):
        return None
    # Columns are independent, so every parameter is a pivot with no free part.
    k = [Fraction(0)] * gs.p
    for col, (_, const) in zip(red.pivot_cols, red.exprs):
        k[col] = const
    return tuple(k)


def membership(gs: GeneralSolution, x0: Sequence[int]) -> tuple[int, ...] | None:
    """Integer parameters reaching ``x0``; None means not representable."""
    k = rational_parameters(gs, x0)
    if k is None or any(v.denominator != 1 for v in k):
        return None
    return tuple(int(v) for v in k)


# -- enumeration -----------------------------------------------------------


_particular_cache: dict = {}


def _box_points(sys: LinearSystem, B: int) -> int:
    return (2 * B + 1) ** sys.n


def brute_particulars(sys: LinearSystem, B: int) -> list[tuple[int, ...]]:
    """All integer solutions in ``[-B, B]^n``, lexicographically ordered.

    Raises :class:`BudgetExceeded` rather than truncating when the box holds
    more candidate points than :func:`enumeration_budget` allows.
    """
    if B < 0:
        raise ValueError("box radius must be non-negative")
    points = _box_points(sys, B)
    budget = enumeration_budget()
    if points > budget:
        raise BudgetExceeded(f"box [-{B}, {B}]^{sys.n} has {points} points, budget is {budget}")
    key = (sys, B)
    if key in _particular_cache:
        return list(_particular_cache[key])
    bound = max((sum(abs(a) for a in row) * B + abs(bi) for row, bi in zip(sys.A, sys.b)), default=0)
    if bound < _INT64_SAFE:
        found = _enumerate_numpy(sys, B, points)
    else:
        found = _enumerate_python(sys, B)
    _particular_cache[key] = tuple(found)
    return found


def _enumerate_numpy(sys: LinearSystem, B: int, points: int) -> list[tuple[int, ...]]:
    n, side = sys.n, 2 * B + 1
    A = np.array(sys.A, dtype=np.int64)
    b = np.array(sys.b, dtype=np.int64)
    # Mixed-radix digits of the flat index, most significant first, give
    # lexicographic order over the box.
    radix = side ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out: list[tuple[int, ...]] = []
    for start in range(0, points, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, points), dtype=np.int64)
        X = (idx[:, None] // radix) % side - B
        hit = np.all(X @ A.T == b, axis=1)
        out.extend(tuple(int(v) for v in row) for row in X[hit])
    return out


def _enumerate_python(sys: LinearSystem, B: int) -> list[tuple[int, ...]]:
    from itertools import product

    rng = range(-B, B + 1)
    return [x for x in product(rng, repeat=sys.n) if verify_particular(sys, x)]


# -- generality ------------------------------------------------------------


@dataclass(frozen=True)
class BoxResult:
    """Outcome of a box generality check; falsy when a witness was found."""

    ok: bool
    witness: tuple[int, ...] | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _members_mask(gs: GeneralSolution, pts: list[tuple[int, ...]]) -> list[bool]:
    """Vectorized membership through one invertible ``p x p`` row block of ``C``."""
    if not pts:
        return []
    p = gs.p
    if p == 0:
        return [pt == gs.d for pt in pts]
    rows: list[int] = []
    for i in range(gs.n):
        if matrix_rank([gs.C[r] for r in rows + [i]]) == len(rows) + 1:
            rows.append(i)
            if len(rows) == p:
                break
    M = [list(gs.C[r]) for r in rows]
    det, adj = _adjugate(M)
    big = max(abs(det), *(abs(v) for row in adj for v in row), 1)
    diff_bound = max(abs(v) for pt in pts for v in pt) + max(abs(v) for v in gs.d)
    cbound = max((abs(v) for row in gs.C for v in row), default=1)
    if big * diff_bound * p >= _INT64_SAFE or big * diff_bound * cbound * p * p >= _INT64_SAFE:
        return [membership(gs, pt) is not None for pt in pts]
    X = np.array(pts, dtype=np.int64) - np.array(gs.d, dtype=np.int64)
    adjm = np.array(adj, dtype=np.int64)
    num = X[:, rows] @ adjm.T  # det * k
    integral = np.all(num % det == 0, axis=1)
    # k is exact where integral; consistency with the remaining rows.
    C = np.array(gs.C, dtype=np.int64)
    consistent = np.all(num @ C.T == det * X, axis=1)
    return list(integral & consistent)


def _adjugate(M: list[list[int]]) -> tuple[int, list[list[int]]]:
    from .model import determinant

    p = len(M)
    det = determinant(M)
    if p == 1:
        return det, [[1]]
    adj = [[0] * p for _ in range(p)]
    for i in range(p):
        for j in range(p):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(M) if r != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return det, adj


def is_general_on_box(sys: LinearSystem, gs: GeneralSolution, B: int = 10) -> BoxResult:
    """Check that every particular solution in the box is reached by integer ``k``."""
    if not verify_symbolic(sys, gs):
        raise ValueError("lattice fails symbolic verification; generality is moot")
    pts = brute_particulars(sys, B)
    for pt, ok in zip(pts, _members_mask(gs, pts)):
        if not ok:
            return BoxResult(False, pt, len(pts))
    return BoxResult(True, None, len(pts))


def equivalent_on_box(sys: LinearSystem, a: GeneralSolution, b: GeneralSolution, B: int = 10) -> bool:
    if a.p != b.p:
        return False
    return bool(is_general_on_box(sys, a, B)) and bool(is_general_on_box(sys, b, B))


# -- structural checks -----------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __iter__(self):
        return iter(self.checks)


def _gcd(values) -> int:
    return math.gcd(*values) if values else 0


def structure_checks(sys: LinearSystem, gs: GeneralSolution) -> StructureReport:
    """Necessary conditions on a general solution; passing does not prove generality."""
    if not verify_symbolic(sys, gs):
        raise ValueError("lattice fails symbolic verification")
    rank_c = matrix_rank([list(r) for r in gs.C]) if gs.p else 0
    expected = sys.n - matrix_rank(sys.A)
    dims = CheckResult(
        "dimension",
        PASS if rank_c == gs.p == expected else FAIL,
        {"rank_C": rank_c, "p": gs.p, "n_minus_rank_A": expected},
    )

    if sys.is_homogeneous:
        col_gcds = [_gcd(gs.column(j)) for j in range(gs.p)]
        ok = not any(gs.d) and all(g == 1 for g in col_gcds)
        standard = CheckResult("standard_form", PASS if ok else FAIL, {"d": list(gs.d), "column_gcds": col_gcds})
    else:
        standard = CheckResult("standard_form", NA)

    a = sys.A[0]
    if sys.m == 1 and sys.is_homogeneous and _gcd(a) == 1 and gs.n > 1:
        row_gcds = [_gcd(row) for row in gs.C]
        other = [_gcd([a[j] for j in range(gs.n) if j != i]) for i in range(gs.n)]
        rows = CheckResult(
            "row_gcd_identity",
            PASS if row_gcds == other else FAIL,
            {"row_gcds": row_gcds, "coefficient_gcds": other},
        )
    else:
        rows = CheckResult("row_gcd_identity", NA)
    return StructureReport((dims, standard, rows))
