"""Exact general integer solutions of linear Diophantine equations and systems."""

from .equations import solve_eq_congruence, solve_eq_gcd, solve_equation
from .estimator import DiophantineSolver
from .model import (
    GeneralSolution,
    LinearSystem,
    NoSolution,
    Solution,
    SolverError,
    SolverTrace,
    compose,
    rank_and_reduce,
    substitute,
)
from .oracle import (
    brute_particulars,
    equivalent_on_box,
    is_general_on_box,
    membership,
    structure_checks,
    verify_particular,
    verify_symbolic,
)
from .systems import (
    feasibility_cramer,
    preprocess,
    solve_sys_elim,
    solve_sys_fraction,
    solve_sys_hybrid,
    solve_sys_modpivot,
    solve_sys_substitution,
    solve_system,
)
from .textio import load_solution, parse_system, render

__version__ = "0.1.0"

__all__ = [
    "DiophantineSolver",
    "GeneralSolution",
    "LinearSystem",
    "NoSolution",
    "Solution",
    "SolverError",
    "SolverTrace",
    "brute_particulars",
    "compose",
    "equivalent_on_box",
    "feasibility_cramer",
    "is_general_on_box",
    "load_solution",
    "membership",
    "parse_system",
    "preprocess",
    "rank_and_reduce",
    "render",
    "solve_eq_congruence",
    "solve_eq_gcd",
    "solve_equation",
    "solve_sys_elim",
    "solve_sys_fraction",
    "solve_sys_hybrid",
    "solve_sys_modpivot",
    "solve_sys_substitution",
    "solve_system",
    "structure_checks",
    "substitute",
    "verify_particular",
    "verify_symbolic",
]
