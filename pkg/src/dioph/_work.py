"""Shared bookkeeping for the descent solvers.

An expression is a pair ``(terms, const)`` with ``terms`` a dict from
variable id to a nonzero integer coefficient.  Equations are expressions
constrained to equal zero.  Statements record eliminated variables; every
definition is substituted eagerly into all equations and statements, so a
statement only ever mentions variables that are still free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import gcd_many
from .model import GeneralSolution, SolverError, SolverTrace, matrix_rank

Terms = dict


@dataclass
class Expr:
    terms: Terms = field(default_factory=dict)
    const: int = 0

    @classmethod
    def var(cls, v: int, coeff: int = 1) -> "Expr":
        return cls({v: coeff} if coeff else {}, 0)

    def copy(self) -> "Expr":
        return Expr(dict(self.terms), self.const)

    def coeff(self, v: int) -> int:
        return self.terms.get(v, 0)

    def scaled(self, s: int) -> "Expr":
        if s == 0:
            return Expr()
        return Expr({v: c * s for v, c in self.terms.items()}, self.const * s)

    def add(self, other: "Expr", s: int = 1) -> "Expr":
        out = dict(self.terms)
        for v, c in other.terms.items():
            nc = out.get(v, 0) + s * c
            if nc:
                out[v] = nc
            else:
                out.pop(v, None)
        return Expr(out, self.const + s * other.const)

    def subst(self, v: int, expr: "Expr") -> "Expr":
        c = self.terms.get(v, 0)
        if not c:
            return self
        base = Expr({u: cu for u, cu in self.terms.items() if u != v}, self.const)
        return base.add(expr, c)

    def without(self, v: int) -> "Expr":
        return Expr({u: c for u, c in self.terms.items() if u != v}, self.const)

    def is_zero(self) -> bool:
        return not self.terms and self.const == 0

    def content(self) -> int:
        """gcd of the variable coefficients (0 when there are none)."""
        return gcd_many(list(self.terms.values()) or [0])

    def magnitudes(self):
        yield abs(self.const)
        for c in self.terms.values():
            yield abs(c)


def solve_for(eq: Expr, v: int) -> Expr:
    """Solve ``eq == 0`` for ``v``, whose coefficient must be +1 or -1."""
    c = eq.coeff(v)
    if abs(c) != 1:
        raise SolverError(f"cannot isolate a variable with coefficient {c}")
    # c*v + rest = 0  ->  v = -c*rest  (c is its own inverse)
    return eq.without(v).scaled(-c)


class Workspace:
    """Variables, live equations and statements for one solve."""

    def __init__(self, names, trace: SolverTrace | None = None) -> None:
        self.names: list[str] = list(names)
        self.n_original = len(self.names)
        self.equations: list[Expr] = []
        self.statements: dict[int, Expr] = {}
        self.rational: dict[int, tuple[Expr, int]] = {}
        self.trace = trace if trace is not None else SolverTrace()
        self.log: list[str] = []

    def fresh(self, prefix: str) -> int:
        self.names.append(f"{prefix}{len(self.names) - self.n_original + 1}")
        return len(self.names) - 1

    def see(self, expr: Expr) -> None:
        self.trace.see(*expr.magnitudes())

    def define(self, v: int, expr: Expr, tag: str = "") -> None:
        """Record ``v = expr`` and substitute it everywhere."""
        if v in expr.terms:
            raise SolverError("self-referential definition")
        self.equations = [e.subst(v, expr) for e in self.equations]
        for u in list(self.statements):
            self.statements[u] = self.statements[u].subst(v, expr)
        for u, (num, den) in list(self.rational.items()):
            self.rational[u] = normalize_fraction(num.subst(v, expr), den)
        self.statements[v] = expr
        self.trace.substitutions += 1
        self.see(expr)
        for e in self.equations:
            self.see(e)
        if tag:
            self.log.append(f"{tag}: {self.names[v]} = {self.show(expr)}")

    def show(self, expr: Expr) -> str:
        parts = []
        for v in sorted(expr.terms):
            c = expr.terms[v]
            parts.append(f"{c:+d}*{self.names[v]}")
        if expr.const or not parts:
            parts.append(f"{expr.const:+d}")
        return " ".join(parts)

    def lattice(self) -> GeneralSolution:
        """Read the general solution off the statements.

        Free variables that survive become parameters, originals first in
        input order, then auxiliaries in creation order.
        """
        exprs = []
        for j in range(self.n_original):
            if j in self.rational:
                num, den = self.rational[j]
                if den != 1:
                    raise SolverError(f"{self.names[j]} is still fractional")
                exprs.append(num)
            elif j in self.statements:
                exprs.append(self.statements[j])
            else:
                exprs.append(Expr.var(j))
        params = sorted({v for e in exprs for v in e.terms})
        C = [[e.coeff(v) for v in params] for e in exprs]
        d = [e.const for e in exprs]
        try:
            return GeneralSolution(self.names[: self.n_original], C, d, len(params))
        except ValueError as exc:
            raise SolverError(str(exc)) from exc


def normalize_fraction(num: Expr, den: int) -> tuple[Expr, int]:
    """Reduce ``num / den`` to lowest terms with a positive denominator."""
    if den < 0:
        num, den = num.scaled(-1), -den
    g = gcd_many([den, num.const, *num.terms.values()])
    if g > 1:
        num = Expr({v: c // g for v, c in num.terms.items()}, num.const // g)
        den //= g
    return num, den


def certify(sys, gs: GeneralSolution) -> GeneralSolution:
    """Exact self-check run on every lattice before a solver returns it."""
    for i, (row, bi) in enumerate(zip(sys.A, sys.b)):
        for j in range(gs.p):
            if sum(a * c[j] for a, c in zip(row, gs.C)):
                raise SolverError(f"column k{j + 1} violates equation {i + 1}")
        if sum(a * di for a, di in zip(row, gs.d)) != bi:
            raise SolverError(f"offset violates equation {i + 1}")
    expected = sys.n - matrix_rank(sys.A)
    if gs.p != expected:
        raise SolverError(f"lattice has {gs.p} parameters, expected {expected}")
    return gs
