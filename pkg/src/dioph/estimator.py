"""scikit-learn style wrapper around the solvers.

``fit(A, b)`` computes the general integer solution ``x = C k + d``.
``transform`` maps parameter vectors ``k`` to solutions, and
``inverse_transform`` recovers ``k`` from a solution.  Both are exact and
return object arrays of Python ints so nothing overflows.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .equations import solve_equation
from .model import LinearSystem, NoSolution, SolverError
from .oracle import membership, verify_symbolic
from .systems import solve_system
from .validation import check_int_matrix, check_int_vector

ALGORITHMS = ("auto", "e1", "e2", "s1", "s2", "s3", "s4", "s5")


class DiophantineSolver(TransformerMixin, BaseEstimator):
    """General integer solution of ``A x = b``.

    Parameters
    ----------
    algorithm : str, default="auto"
        One of ``e1``, ``e2`` (single equations), ``s1`` .. ``s5`` or
        ``auto`` (``e2`` for one equation, ``s5`` otherwise).
    var_names : sequence of str or None
        Names for the columns of ``A``; defaults to ``x1 .. xn``.

    Attributes
    ----------
    solvable_ : bool
    outcome_ : Solution or NoSolution
    general_solution_ : GeneralSolution or None
    components_ : ndarray of shape (n, p), dtype object
    offset_ : ndarray of shape (n,), dtype object
    n_params_ : int
    trace_ : SolverTrace
    """

    def __init__(self, algorithm: str = "auto", var_names=None):
        self.algorithm = algorithm
        self.var_names = var_names

    def fit(self, A, b=None):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        rows = check_int_matrix(A)
        rhs = check_int_vector(np.zeros(len(rows), dtype=np.int64) if b is None else b, len(rows))
        system = LinearSystem(self.var_names, rows, rhs)
        algo = self.algorithm
        if algo == "auto":
            algo = "e2" if system.m == 1 else "s5"
        if algo in ("e1", "e2"):
            outcome, trace = solve_equation(system, algo)
        else:
            outcome, trace = solve_system(system, algo)
        self.system_ = system
        self.outcome_ = outcome
        self.trace_ = trace
        self.n_features_in_ = system.n
        self.solvable_ = not isinstance(outcome, NoSolution)
        if self.solvable_:
            gs = outcome.gs
            if not verify_symbolic(system, gs):
                raise SolverError("solver returned a lattice that fails verification")
            self.general_solution_ = gs
            self.n_params_ = gs.p
            self.components_ = np.array([list(r) for r in gs.C], dtype=object).reshape(gs.n, gs.p)
            self.offset_ = np.array(gs.d, dtype=object)
        else:
            self.general_solution_ = None
            self.n_params_ = 0
            self.components_ = None
            self.offset_ = None
        return self

    def _check_solution(self):
        if not hasattr(self, "outcome_"):
            raise NotFittedError("call fit before using this estimator")
        if not self.solvable_:
            raise ValueError(f"system has no integer solution: {self.outcome_.reason}")
        return self.general_solution_

    def transform(self, K):
        """Map parameter rows ``k`` (shape ``(s, p)``) to solutions ``C k + d``."""
        gs = self._check_solution()
        if gs.p == 0:
            K = np.asarray(K, dtype=object)
            if K.ndim != 2 or K.shape[1] != 0:
                raise ValueError("K must have shape (n_samples, 0) for a unique solution")
            rows = [[] for _ in range(K.shape[0])]
        else:
            rows = check_int_matrix(K, "K")
        if any(len(r) != gs.p for r in rows):
            raise ValueError(f"K must have {gs.p} columns")
        out = [[sum(c * k for c, k in zip(crow, r)) + di for crow, di in zip(gs.C, gs.d)] for r in rows]
        return np.array(out, dtype=object).reshape(len(rows), gs.n)

    def inverse_transform(self, X):
        """Recover integer parameters for each solution row of ``X``."""
        gs = self._check_solution()
        rows = check_int_matrix(X, "X")
        out = []
        for i, r in enumerate(rows):
            if len(r) != gs.n:
                raise ValueError(f"X must have {gs.n} columns")
            k = membership(gs, r)
            if k is None:
                raise ValueError(f"row {i} is not an integer solution reachable by the lattice")
            out.append(list(k))
        return np.array(out, dtype=object).reshape(len(rows), gs.p)

    def score(self, X, y=None) -> float:
        """Fraction of rows of ``X`` that solve the system exactly."""
        self._check_solution()
        rows = check_int_matrix(X, "X")
        A, b = self.system_.A, self.system_.b
        hits = sum(all(sum(a * v for a, v in zip(arow, r)) == bi for arow, bi in zip(A, b)) for r in rows)
        return hits / len(rows)
