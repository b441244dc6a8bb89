"""Single-equation solvers: gcd descent and congruence (minimal residue) descent.

Both return ``(outcome, trace)`` where ``outcome`` is a :class:`Solution`
holding the general integer solution or a :class:`NoSolution` carrying the
gcd that fails to divide the right-hand side.
"""

from __future__ import annotations

from ._work import Expr, Workspace, certify, solve_for
from .arith import NoResidue, div_floor, gcd_many, least_abs_residue
from .model import (
    GeneralSolution,
    LinearSystem,
    NoSolution,
    Solution,
    SolveOutcome,
    SolverError,
    SolverTrace,
)

__all__ = ["solve_eq_congruence", "solve_eq_gcd", "solve_equation"]


def _single(eq: LinearSystem) -> tuple[list[int], int]:
    if eq.m != 1:
        raise ValueError(f"expected a single equation, got {eq.m}")
    return list(eq.A[0]), eq.b[0]


def _trivial_or_infeasible(eq: LinearSystem, a: list[int], b: int):
    """Handle the all-zero equation and the gcd test; return the gcd otherwise."""
    d = gcd_many(a)
    if d == 0:
        if b != 0:
            return NoSolution("0 = b with b nonzero", {"gcd": 0, "b": b})
        n = len(a)
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        return Solution(GeneralSolution(eq.vars, ident, [0] * n, n))
    if b % d:
        return NoSolution(f"gcd {d} of the coefficients does not divide {b}", {"gcd": d, "b": b})
    return d


def _start(eq: LinearSystem, a: list[int], b: int, d: int, trace: SolverTrace):
    ws = Workspace(eq.vars, trace)
    ws.equations.append(Expr({j: c // d for j, c in enumerate(a) if c}, -(b // d)))
    ws.see(ws.equations[0])
    return ws


def _finish(eq: LinearSystem, ws: Workspace, trace: SolverTrace):
    if any(not e.is_zero() for e in ws.equations):
        raise SolverError("equation not fully resolved")
    return Solution(certify(eq, ws.lattice())), trace


def solve_eq_gcd(eq: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """General solution by repeated floor division on the smallest coefficient.

    Each round picks the nonzero coefficient of least magnitude (lowest
    position on ties), writes every other coefficient and the right-hand
    side as ``a_j = a_i q_j + r_j`` with ``0 <= r_j < |a_i|`` and replaces
    ``x_i`` by ``-sum q_j x_j + q - t``.  The rewritten equation reads
    ``-a_i t + sum r_j x_j = r``.  A unit pivot ends the descent.
    """
    a, b = _single(eq)
    trace = SolverTrace()
    d = _trivial_or_infeasible(eq, a, b)
    if not isinstance(d, int):
        return d, trace
    ws = _start(eq, a, b, d, trace)
    slots = list(range(eq.n))
    while True:
        trace.iterations += 1
        equation = ws.equations[0]
        coeffs = [equation.coeff(v) for v in slots]
        piv = min((i for i, c in enumerate(coeffs) if c), key=lambda i: (abs(coeffs[i]), i))
        ai, xi = coeffs[piv], slots[piv]
        if abs(ai) == 1:
            ws.define(xi, solve_for(equation, xi), tag="final")
            return _finish(eq, ws, trace)
        rhs = -equation.const
        expr = Expr({}, 0)
        for pos, v in enumerate(slots):
            if pos != piv and coeffs[pos]:
                qj, _ = div_floor(coeffs[pos], ai)
                if qj:
                    expr.terms[v] = -qj
        q, _ = div_floor(rhs, ai)
        t = ws.fresh("t")
        expr.terms[t] = -1
        expr.const = q
        ws.define(xi, expr, tag="descent")
        slots[piv] = t
        if ws.equations[0].coeff(t) != -ai:
            raise SolverError("descent step broke the reconstruction identity")


def _unit_closed_form(ws: Workspace, slots: list[int], trace: SolverTrace) -> bool:
    """Case of a coefficient equal to +1 or -1: isolate it directly."""
    equation = ws.equations[0]
    for v in slots:
        if abs(equation.coeff(v)) == 1:
            trace.iterations += 1
            ws.define(v, solve_for(equation, v), tag="unit")
            return True
    return False


def solve_eq_congruence(eq: LinearSystem) -> tuple[SolveOutcome, SolverTrace]:
    """General solution by descent on the least absolute residue.

    Each round scans all ordered pairs ``(i, j)`` of nonzero coefficients
    for ``r = a_i mod a_j`` of least ``|r| > 0`` (ties: smallest ``i``, then
    ``j``).  For ``|r| > 1`` it records ``x_j = t - ((a_i - r)/a_j) x_i``,
    which turns the coefficient of ``x_i`` into ``r``.  At ``|r| = 1`` the
    two-variable closed form finishes the solve.
    """
    a, b = _single(eq)
    trace = SolverTrace()
    d = _trivial_or_infeasible(eq, a, b)
    if not isinstance(d, int):
        return d, trace
    ws = _start(eq, a, b, d, trace)
    slots = list(range(eq.n))
    if _unit_closed_form(ws, slots, trace):
        return _finish(eq, ws, trace)
    while True:
        trace.iterations += 1
        equation = ws.equations[0]
        coeffs = [equation.coeff(v) for v in slots]
        best = None
        for i, ai in enumerate(coeffs):
            if not ai:
                continue
            for j, aj in enumerate(coeffs):
                if j == i or not aj:
                    continue
                try:
                    r = least_abs_residue(ai, aj)
                except NoResidue:
                    continue
                key = (abs(r), i, j)
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise SolverError("no residue available; equation was not normalized")
        (_, i, j), r = best
        ai, aj = coeffs[i], coeffs[j]
        xi, xj = slots[i], slots[j]
        m = (ai - r) // aj
        t = ws.fresh("t")
        if abs(r) == 1:
            _close(ws, equation, xi, xj, ai, aj, r, m, t)
            return _finish(eq, ws, trace)
        ws.define(xj, Expr({t: 1, xi: -m}), tag="residue")
        slots[j] = t
        if ws.equations[0].coeff(xi) != r:
            raise SolverError("residue step did not produce the expected coefficient")


def _close(ws: Workspace, equation: Expr, xi, xj, ai, aj, r, m, t) -> None:
    # a_i x_i + a_j x_j + S = b with a_i = m a_j + r, r = +-1.
    # With x_j = t - m x_i the equation becomes r x_i + a_j t + S = b, so
    #   x_i = r (b - a_j t - S),  x_j = r (a_i t + m S - m b).
    rest = equation.without(xi).without(xj)
    S = Expr(rest.terms, 0)
    b = -equation.const
    x_i = Expr({t: -aj}, b).add(S, -1).scaled(r)
    x_j = Expr({t: ai}, -m * b).add(S, m).scaled(r)
    check = S.add(x_i, ai).add(x_j, aj)
    check.const -= b
    if not check.is_zero():
        raise SolverError("two-variable closed form failed its symbolic check")
    ws.define(xi, x_i, tag="close")
    ws.define(xj, x_j, tag="close")


_SOLVERS = {"e1": solve_eq_gcd, "gcd": solve_eq_gcd, "e2": solve_eq_congruence, "congruence": solve_eq_congruence}


def solve_equation(eq: LinearSystem, method: str = "congruence"):
    try:
        return _SOLVERS[method](eq)
    except KeyError:
        raise ValueError(f"unknown equation solver {method!r}") from None
