"""Core data model: systems, general-solution lattices, outcomes, traces.

Also hosts exact rational elimination, which the fraction-based system
solvers and the membership oracle both build on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

__all__ = [
    "GeneralSolution",
    "Inconsistent",
    "LinearSystem",
    "NoSolution",
    "RationalReducedForm",
    "Solution",
    "SolveOutcome",
    "SolverError",
    "SolverTrace",
    "compose",
    "determinant",
    "independent_rows",
    "matrix_rank",
    "rank_and_reduce",
    "substitute",
]


class SolverError(RuntimeError):
    """A solver produced a result that failed its own exact verification."""


def _as_int(v, what: str) -> int:
    if isinstance(v, bool):
        raise TypeError(f"{what}: booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    try:
        iv = int(v)
    except (TypeError, ValueError):
        raise TypeError(f"{what}: expected an integer, got {v!r}") from None
    if iv != v:
        raise TypeError(f"{what}: expected an integer, got {v!r}")
    return iv


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{j + 1}" for j in range(n))


@dataclass(frozen=True)
class LinearSystem:
    """Integer system ``A x = b``; a single equation is the ``m == 1`` case."""

    vars: tuple[str, ...]
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __init__(self, vars: Sequence[str] | None, A, b) -> None:
        rows = tuple(tuple(_as_int(v, "coefficient") for v in row) for row in A)
        rhs = tuple(_as_int(v, "right-hand side") for v in b)
        if not rows:
            raise ValueError("a system needs at least one equation")
        n = len(rows[0])
        if n == 0:
            raise ValueError("a system needs at least one variable")
        if any(len(r) != n for r in rows):
            raise ValueError("ragged coefficient matrix")
        if len(rhs) != len(rows):
            raise ValueError(f"{len(rows)} equations but {len(rhs)} right-hand sides")
        names = _default_names(n) if vars is None else tuple(vars)
        if len(names) != n:
            raise ValueError(f"{n} columns but {len(names)} variable names")
        if len(set(names)) != n:
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", rhs)

    @classmethod
    def equation(cls, coeffs: Sequence[int], rhs: int, vars: Sequence[str] | None = None):
        return cls(vars, [list(coeffs)], [rhs])

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def is_homogeneous(self) -> bool:
        return all(v == 0 for v in self.b)

    def row(self, i: int) -> tuple[int, ...]:
        return self.A[i]


@dataclass(frozen=True)
class GeneralSolution:
    """Affine lattice ``x = C k + d`` with ``k`` ranging over ``Z^p``.

    ``C`` is stored row-major (one row per variable, one column per
    parameter).  Columns must be linearly independent over the rationals.
    """

    vars: tuple[str, ...]
    C: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    p: int

    def __init__(self, vars: Sequence[str], C, d, p: int | None = None) -> None:
        names = tuple(vars)
        n = len(names)
        rows = tuple(tuple(_as_int(v, "lattice entry") for v in row) for row in C)
        offset = tuple(_as_int(v, "offset") for v in d)
        if len(rows) != n or len(offset) != n:
            raise ValueError("C and d must have one row per variable")
        if p is None:
            p = len(rows[0]) if rows else 0
        if any(len(r) != p for r in rows):
            raise ValueError(f"every row of C must have {p} entries")
        if p and matrix_rank([list(r) for r in rows]) != p:
            raise ValueError("columns of C are linearly dependent")
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "C", rows)
        object.__setattr__(self, "d", offset)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.vars)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.C)

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(f"k{j + 1}" for j in range(self.p))


@dataclass(frozen=True)
class NoSolution:
    """The system has no integer solution.

    ``witness`` holds integers that certify the verdict, e.g. ``gcd`` and
    ``b`` with ``gcd`` not dividing ``b``.
    """

    reason: str
    witness: dict = field(default_factory=dict, hash=False, compare=True)

    ok = False


@dataclass(frozen=True)
class Solution:
    gs: GeneralSolution

    ok = True


SolveOutcome = Union[NoSolution, Solution]


@dataclass
class SolverTrace:
    iterations: int = 0
    substitutions: int = 0
    peak_coeff: int = 0

    def see(self, *values: int) -> None:
        for v in values:
            if abs(v) > self.peak_coeff:
                self.peak_coeff = abs(v)

    def absorb(self, other: "SolverTrace") -> None:
        self.iterations += other.iterations
        self.substitutions += other.substitutions
        self.see(other.peak_coeff)


# -- rational elimination -------------------------------------------------


@dataclass(frozen=True)
class RationalReducedForm:
    """Main variables expressed through the free ones over the rationals.

    ``exprs[i]`` belongs to ``pivot_cols[i]`` and is ``(coeffs, const)``
    where ``coeffs`` maps free column index to a Fraction.
    """

    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]
    exprs: tuple[tuple[dict, Fraction], ...]
    rank: int
    pivot_rows: tuple[int, ...] = ()


@dataclass(frozen=True)
class Inconsistent:
    """Rational certificate: ``y A = 0`` while ``y b != 0``, ``y`` integral."""

    multipliers: tuple[int, ...]
    value: int


def _echelon(rows: list[list[Fraction]], ncols: int, track: bool):
    """Gauss-Jordan in place; leftmost pivot column, lowest row index first.

    Returns ``(pivot_cols, pivot_rows, combos)`` where ``combos[i]`` are the
    multipliers expressing the reduced row ``i`` in the original rows.
    """
    m = len(rows)
    combos = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)] if track else None
    order = list(range(m))
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            order[r], order[piv] = order[piv], order[r]
            if track:
                combos[r], combos[piv] = combos[piv], combos[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        if track:
            combos[r] = [v / pv for v in combos[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if track:
                    combos[i] = [a - f * b for a, b in zip(combos[i], combos[r])]
        pivot_cols.append(c)
        r += 1
    return pivot_cols, order[: len(pivot_cols)], combos


def matrix_rank(M: Sequence[Sequence[int]]) -> int:
    if not M or not M[0]:
        return 0
    rows = [[Fraction(v) for v in row] for row in M]
    pivots, _, _ = _echelon(rows, len(rows[0]), track=False)
    return len(pivots)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(row) for row in M]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_and_reduce(sys: LinearSystem) -> RationalReducedForm | Inconsistent:
    """Solve ``sys`` over the rationals.

    Pivot rule: leftmost nonzero column, then smallest row index.  A row
    reducing to ``0 = c`` with ``c != 0`` yields :class:`Inconsistent`
    carrying integral multipliers of the original rows.
    """
    n = sys.n
    rows = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(sys.A, sys.b)]
    pivot_cols, pivot_rows, combos = _echelon(rows, n, track=True)
    rank = len(pivot_cols)
    for i in range(rank, sys.m):
        if rows[i][n] != 0:
            y = combos[i]
            den = 1
            for v in y:
                den = den * v.denominator // math.gcd(den, v.denominator)
            mult = tuple(int(v * den) for v in y)
            value = sum(mi * bi for mi, bi in zip(mult, sys.b))
            return Inconsistent(mult, value)
    free = tuple(c for c in range(n) if c not in pivot_cols)
    exprs = []
    for i, c in enumerate(pivot_cols):
        coeffs = {f: -rows[i][f] for f in free if rows[i][f] != 0}
        exprs.append((coeffs, rows[i][n]))
    return RationalReducedForm(tuple(pivot_cols), free, tuple(exprs), rank, tuple(pivot_rows))


def independent_rows(sys: LinearSystem) -> LinearSystem | Inconsistent:
    """Drop rationally dependent rows; the integer solution set is unchanged."""
    red = rank_and_reduce(sys)
    if isinstance(red, Inconsistent):
        return red
    if red.rank == 0:
        return sys
    keep = sorted(red.pivot_rows)
    return LinearSystem(sys.vars, [sys.A[i] for i in keep], [sys.b[i] for i in keep])


# -- lattice operations ---------------------------------------------------


def substitute(gs: GeneralSolution, k: Sequence[int]) -> tuple[int, ...]:
    """Evaluate ``C k + d``."""
    k = tuple(k)
    if len(k) != gs.p:
        raise ValueError(f"expected {gs.p} parameters, got {len(k)}")
    return tuple(sum(c * kj for c, kj in zip(row, k)) + di for row, di in zip(gs.C, gs.d))


def compose(hom: GeneralSolution, particular: Sequence[int]) -> GeneralSolution:
    """Homogeneous general solution plus a particular solution."""
    particular = tuple(particular)
    if len(particular) != hom.n:
        raise ValueError(f"particular solution has {len(particular)} entries, expected {hom.n}")
    if any(hom.d):
        raise ValueError("compose expects a homogeneous solution (d = 0)")
    return GeneralSolution(hom.vars, hom.C, particular, hom.p)
