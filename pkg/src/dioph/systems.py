"""Preprocessing, feasibility criteria and the five system solvers.

=========  ====================================================================
``s1``     substitution: solve one equation, feed its lattice into the rest
``s2``     elimination by least-residue substitutions across the system
``s3``     rational solve, then integer side-equations for the fractional parts
``s4``     floor-division descent on the globally smallest coefficient
``s5``     rational front end of ``s3`` with the floor descent of ``s4``
=========  ====================================================================

All solvers return ``(outcome, trace)`` and self-check every lattice with
exact arithmetic before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from ._work import Expr, Workspace, certify, normalize_fraction, solve_for
from .arith import NoResidue, div_floor, gcd_many, least_abs_residue
from .equations import solve_equation
from .model import (
    Inconsistent,
    LinearSystem,
    NoSolution,
    Solution,
    SolveOutcome,
    SolverError,
    SolverTrace,
    determinant,
    rank_and_reduce,
)

__all__ = [
    "FeasibilityVerdict",
    "Unconstrained",
    "feasibility_cramer",
    "preprocess",
    "solve_sys_elim",
    "solve_sys_fraction",
    "solve_sys_hybrid",
    "solve_sys_modpivot",
    "solve_sys_substitution",
    "solve_system",
]

GUARANTEED = "guaranteed"
UNKNOWN = "unknown"
INFEASIBLE = "infeasible"


# -- preprocessing --------------------------------------------------------


def _normalize(equations: list[Expr]) -> list[Expr] | NoSolution:
    """Divide rows by their content, reject ``0 = c``, drop identities and repeats."""
    out: list[Expr] = []
    for idx, e in enumerate(equations):
        g = e.content()
        if g == 0:
            if e.const:
                return NoSolution("equation reduces to 0 = c with c nonzero", {"gcd": 0, "b": -e.const, "row": idx})
            continue
        if e.const % g:
            return NoSolution(
                f"row content {g} does not divide the right-hand side {-e.const}",
                {"gcd": g, "b": -e.const, "row": idx},
            )
        if g > 1:
            e = Expr({v: c // g for v, c in e.terms.items()}, e.const // g)
        neg = e.scaled(-1)
        if any(e == o or neg == o for o in out):
            continue
        out.append(e)
    return out


@dataclass(frozen=True)
class Unconstrained:
    """Every equation vanished during preprocessing: all of ``Z^n`` solves it."""

    vars: tuple[str, ...]


def preprocess(sys: LinearSystem) -> LinearSystem | NoSolution | Unconstrained:
    """Row-content division, contradiction check, removal of identities and repeats."""
    rows = [Expr({j: a for j, a in enumerate(row) if a}, -bi) for row, bi in zip(sys.A, sys.b)]
    res = _normalize(rows)
    if isinstance(res, NoSolution):
        return res
    if not res:
        return Unconstrained(sys.vars)
    A = [[e.coeff(j) for j in range(sys.n)] for e in res]
    return LinearSystem(sys.vars, A, [-e.const for e in res])


# -- feasibility ----------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityVerdict:
    status: str
    evidence: dict = field(default_factory=dict, hash=False)


def _replace_col(M, col, values):
    return [[values[i] if j == col else v for j, v in enumerate(row)] for i, row in enumerate(M)]


def feasibility_cramer(sys: LinearSystem, exhaustive: bool = False, use_property4: bool = False) -> FeasibilityVerdict:
    """Sufficient integer-feasibility test through a nonzero maximal minor.

    Requires independent rows.  Column subsets are tried in lexicographic
    order; by default the first nonzero minor decides, with ``exhaustive``
    every subset is tried until one certifies feasibility.  The criterion
    is one-directional: failing it yields ``"unknown"``.  With
    ``use_property4`` a minor whose main-variable expressions have integral
    coefficients but a fractional constant proves infeasibility.
    """
    m, n = sys.m, sys.n
    if m > n:
        raise ValueError("feasibility_cramer needs rank(A) = m, so m <= n")
    if sys.is_homogeneous:
        return FeasibilityVerdict(GUARANTEED, {"homogeneous": True})
    first = None
    for cols in combinations(range(n), m):
        sub = [[row[c] for c in cols] for row in sys.A]
        delta = determinant(sub)
        if delta == 0:
            continue
        replaced = [determinant(_replace_col(sub, h, sys.b)) for h in range(m)]
        evidence = {"columns": list(cols), "delta": delta, "delta_x": replaced}
        if abs(delta) == 1 or all(v % delta == 0 for v in replaced):
            return FeasibilityVerdict(GUARANTEED, evidence)
        if use_property4 and _property4(sys, cols, sub, delta, replaced):
            return FeasibilityVerdict(INFEASIBLE, evidence)
        if first is None:
            first = evidence
        if not exhaustive:
            break
    if first is None:
        raise ValueError("every maximal minor vanishes; rows are dependent")
    return FeasibilityVerdict(UNKNOWN, first)


def _property4(sys, cols, sub, delta, replaced) -> bool:
    # Main variable h: delta * x_h = delta_x_h - sum_f (minor with column h
    # replaced by A[:, f]) * x_f.
    others = [f for f in range(sys.n) if f not in cols]
    for h in range(len(cols)):
        if replaced[h] % delta == 0:
            continue
        coeff_ok = all(
            determinant(_replace_col(sub, h, [row[f] for row in sys.A])) % delta == 0 for f in others
        )
        if coeff_ok:
            return True
    return False


# -- shared helpers -------------------------------------------------------


def _workspace(sys: LinearSystem, trace: SolverTrace) -> Workspace:
    ws = Workspace(sys.vars, trace)
    for row, bi in zip(sys.A, sys.b):
        e = Expr({j: a for j, a in enumerate(row) if a}, -bi)
        ws.equations.append(e)
        ws.see(e)
    return ws


def _renormalize(ws: Workspace) -> NoSolution | None:
    res = _normalize(ws.equations)
    if isinstance(res, NoSolution):
        return res
    ws.equations = res
    return None


def _first_unit(equations: list[Expr], rows) -> tuple[int, int] | None:
    for i in rows:
        for v in sorted(equations[i].terms):
            if abs(equations[i].terms[v]) == 1:
                return i, v
    return None


def _min_residue(equations: list[Expr], rows):
    """Least ``|r| > 0`` over ``a_{i j1} mod a_{i j2}``; key ``(|r|, i, j1, j2)``."""
    best = None
    for i in rows:
        e = equations[i]
        vs = sorted(e.terms)
        for j1 in vs:
            for j2 in vs:
                if j1 == j2:
                    continue
                try:
                    r = least_abs_residue(e.terms[j1], e.terms[j2])
                except NoResidue:
                    continue
                key = (abs(r), i, j1, j2)
                if best is None or key < best[0]:
                    best = (key, r)
    return best


def _residue_step(ws: Workspace, i: int, j1: int, j2: int, r: int, prefix: str) -> None:
    e = ws.equations[i]
    m = (e.terms[j1] - r) // e.terms[j2]
    t = ws.fresh(prefix)
    ws.define(j2, Expr({t: 1, j1: -m}), tag="H")
    if ws.equations[i].coeff(j1) != r:
        raise SolverError("residue substitution did not produce the expected coefficient")


def _floor_step(ws: Workspace, i: int, j0: int, prefix: str) -> None:
    e = ws.equations[i]
    c = e.terms[j0]
    expr = Expr()
    for v, a in e.terms.items():
        if v != j0:
            q, _ = div_floor(a, c)
            if q:
                expr.terms[v] = -q
    q, r = div_floor(-e.const, c)
    t = ws.fresh(prefix)
    expr.terms[t] = 1
    expr.const = q
    ws.define(j0, expr, tag="H")
    after = ws.equations[i]
    if after.coeff(t) != c or -after.const != r:
        raise SolverError("floor substitution broke the reconstruction identity")


def _done(sys: LinearSystem, ws: Workspace, trace: SolverTrace):
    return Solution(certify(sys, ws.lattice())), trace


# -- s1: substitution -----------------------------------------------------


def solve_sys_substitution(sys: LinearSystem, inner: str = "congruence") -> tuple[SolveOutcome, SolverTrace]:
    """Solve equations in input order, substituting each lattice into the rest."""
    trace = SolverTrace()
    ws = _workspace(sys, trace)
    current = list(range(sys.n))
    while ws.equations:
        e = ws.equations[0]
        if not e.terms:
            if e.const:
                return NoSolution("equation reduces to 0 = c with c nonzero", {"gcd": 0, "b": -e.const}), trace
            ws.equations.pop(0)
            continue
        sub = LinearSystem([ws.names[v] for v in current], [[e.coeff(v) for v in current]], [-e.const])
        outcome, inner_trace = solve_equation(sub, inner)
        trace.absorb(inner_trace)
        if isinstance(outcome, NoSolution):
            return outcome, trace
        gs = outcome.gs
        params = [ws.fresh("k") for _ in range(gs.p)]
        for v, row, dv in zip(current, gs.C, gs.d):
            ws.define(v, Expr({k: c for k, c in zip(params, row) if c}, dv), tag="p")
        if not ws.equations[0].is_zero():
            raise SolverError("substituted equation did not vanish")
        ws.equations.pop(0)
        current = params
    return _done(sys, ws, trace)


# -- s2: residue elimination ----------------------------------------------


def solve_sys_elim(sys: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """Eliminate unit coefficients, otherwise substitute on the least residue."""
    trace = SolverTrace()
    ws = _workspace(sys, trace)
    while True:
        bad = _renormalize(ws)
        if bad:
            return bad, trace
        if not ws.equations:
            return _done(sys, ws, trace)
        trace.iterations += 1
        unit = _first_unit(ws.equations, range(len(ws.equations)))
        if unit:
            i, v = unit
            ws.define(v, solve_for(ws.equations[i], v), tag="T")
            ws.equations.pop(i)
            continue
        best = _min_residue(ws.equations, range(len(ws.equations)))
        if best is None:
            raise SolverError("no residue available in a normalized system")
        (_, i, j1, j2), r = best
        _residue_step(ws, i, j1, j2, r, "t")
        if abs(r) == 1:
            ws.define(j1, solve_for(ws.equations[i], j1), tag="P")
            ws.equations.pop(i)


# -- s4: floor descent on the smallest coefficient ------------------------


def solve_sys_modpivot(sys: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """Floor-divide the row holding the globally smallest coefficient."""
    trace = SolverTrace()
    ws = _workspace(sys, trace)
    while True:
        bad = _renormalize(ws)
        if bad:
            return bad, trace
        if not ws.equations:
            return _done(sys, ws, trace)
        trace.iterations += 1
        i, j0 = min(
            ((i, v) for i, e in enumerate(ws.equations) for v in e.terms),
            key=lambda iv: (abs(ws.equations[iv[0]].terms[iv[1]]), iv[0], iv[1]),
        )
        if abs(ws.equations[i].terms[j0]) == 1:
            ws.define(j0, solve_for(ws.equations[i], j0), tag="V")
            ws.equations.pop(i)
        else:
            _floor_step(ws, i, j0, "t")


# -- s3 / s5: rational front end -------------------------------------------


def _rational_start(sys: LinearSystem, trace: SolverTrace):
    red = rank_and_reduce(sys)
    if isinstance(red, Inconsistent):
        return NoSolution(
            "no rational solution",
            {"multipliers": list(red.multipliers), "value": red.value},
        )
    ws = Workspace(sys.vars, trace)
    trace.see(*(abs(a) for row in sys.A for a in row), *(abs(v) for v in sys.b))
    for col, (coeffs, const) in zip(red.pivot_cols, red.exprs):
        den = const.denominator
        for c in coeffs.values():
            den = den * c.denominator // gcd_many([den, c.denominator])
        num = Expr({f: int(c * den) for f, c in coeffs.items()}, int(const * den))
        ws.rational[col] = normalize_fraction(num, den)
        ws.see(num)
    return ws


def _side_equations(ws: Workspace, round_no: int) -> None:
    """Split each fractional main variable as ``Q + R/den`` and emit ``R - den*y = 0``."""
    ws.equations = []
    for col, (num, den) in ws.rational.items():
        if den == 1:
            continue
        rem = Expr({v: least_abs_residue(c, den) for v, c in num.terms.items() if c % den}, 0)
        rem.const = least_abs_residue(num.const, den) if num.const % den else 0
        y = ws.fresh(f"y{round_no}_")
        rem.terms[y] = -den
        ws.equations.append(rem)
        ws.see(rem)


def _fraction_solver(sys: LinearSystem, pick: Callable) -> tuple[SolveOutcome, SolverTrace]:
    trace = SolverTrace()
    ws = _rational_start(sys, trace)
    if isinstance(ws, NoSolution):
        return ws, trace
    ws._work_row = None
    round_no = 0
    while True:
        round_no += 1
        _side_equations(ws, round_no)
        if not ws.equations:
            return _done(sys, ws, trace)
        # One side equation is resolved per round; once a non-unit step has
        # been taken on a row, only that row is worked until it is eliminated,
        # so no auxiliary variable outlives the equation that defines it.
        work = None
        while True:
            bad = _renormalize_tracking(ws, work)
            if isinstance(bad, NoSolution):
                return bad, trace
            work = bad
            trace.iterations += 1
            rows = [work] if work is not None else range(len(ws.equations))
            if pick(ws, rows):
                break
            work = ws._work_row


def _renormalize_tracking(ws: Workspace, work: int | None):
    """Content division of side equations, keeping the index of the working row."""
    out = []
    new_work = None
    for idx, e in enumerate(ws.equations):
        g = e.content()
        if g == 0:
            if e.const:
                return NoSolution("side equation reduces to 0 = c", {"gcd": 0, "b": -e.const})
            if idx == work:
                raise SolverError("working row vanished without elimination")
            continue
        if e.const % g:
            return NoSolution(
                f"side equation content {g} does not divide {-e.const}",
                {"gcd": g, "b": -e.const},
            )
        if g > 1:
            e = Expr({v: c // g for v, c in e.terms.items()}, e.const // g)
        if idx == work:
            new_work = len(out)
        out.append(e)
    ws.equations = out
    return new_work


def _pick_fraction(ws: Workspace, rows) -> bool:
    unit = _first_unit(ws.equations, rows)
    if unit:
        i, v = unit
        ws.define(v, solve_for(ws.equations[i], v), tag="T")
        return True
    best = _min_residue(ws.equations, rows)
    if best is None:
        raise SolverError("no residue available in a side equation")
    (_, i, j1, j2), r = best
    _residue_step(ws, i, j1, j2, r, "z")
    ws._work_row = i
    return False


def _pick_hybrid(ws: Workspace, rows) -> bool:
    i, j0 = min(
        ((i, v) for i in rows for v in ws.equations[i].terms),
        key=lambda iv: (abs(ws.equations[iv[0]].terms[iv[1]]), iv[0], iv[1]),
    )
    if abs(ws.equations[i].terms[j0]) == 1:
        ws.define(j0, solve_for(ws.equations[i], j0), tag="V")
        return True
    _floor_step(ws, i, j0, "t")
    ws._work_row = i
    return False


def solve_sys_fraction(sys: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """Rational solve, then least-residue elimination on the side equations."""
    return _fraction_solver(sys, _pick_fraction)


def solve_sys_hybrid(sys: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """Rational solve, then floor descent on the side equations."""
    return _fraction_solver(sys, _pick_hybrid)


SOLVERS = {
    "s1": solve_sys_substitution,
    "s2": solve_sys_elim,
    "s3": solve_sys_fraction,
    "s4": solve_sys_modpivot,
    "s5": solve_sys_hybrid,
}


def solve_system(sys: LinearSystem, algorithm: str = "s5") -> tuple[SolveOutcome, SolverTrace]:
    try:
        solver = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown system solver {algorithm!r}") from None
    return solver(sys)
