"""Acceptance suite: one test per criterion, each printing a single status line.

Run with ``pytest tests/test_acceptance.py -v`` (the status lines are printed
even when output capture is on).
"""

import contextlib
import functools
import math
import subprocess
import sys
from itertools import combinations

import pytest

from dioph.cli import main as cli_main
from dioph.equations import solve_eq_congruence, solve_eq_gcd
from dioph.model import Inconsistent, NoSolution, Solution, independent_rows, matrix_rank
from dioph.oracle import (
    brute_particulars,
    equivalent_on_box,
    is_general_on_box,
    structure_checks,
    verify_symbolic,
)
from dioph.systems import feasibility_cramer, solve_system

from cases import (
    CONGRUENCE_EQ,
    CONGRUENCE_EQ_GS,
    ELIM_SYS,
    FRACTION_SYS,
    FRACTION_SYS_GS,
    HOM_CANDIDATE,
    HOM_EQ,
    HOM_MISSED,
    HYBRID_SYS,
    HYBRID_SYS_GS,
    MODPIVOT_SYS,
    SUBST_SYS,
    SUBST_SYS_GS,
    WORKED_EQ,
    WORKED_EQ_GS,
    equation_corpus,
    system_corpus,
    unsolvable_corpus,
)

SYSTEM_ALGOS = ("s1", "s2", "s3", "s4", "s5")


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def _run(number: int, title: str):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\nACCEPTANCE {number} FAIL: {title}")
            raise
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} PASS: {title}")

    return _run


# -- shared computations, each done once per session -----------------------


@functools.lru_cache(maxsize=None)
def regression_solutions():
    """Every Solution produced by criteria 1 to 4, with its system."""
    out = [(WORKED_EQ, solve_eq_gcd(WORKED_EQ)[0]), (CONGRUENCE_EQ, solve_eq_congruence(CONGRUENCE_EQ)[0])]
    for system, algo in [
        (SUBST_SYS, "s1"),
        (ELIM_SYS, "s2"),
        (FRACTION_SYS, "s3"),
        (MODPIVOT_SYS, "s4"),
        (HYBRID_SYS, "s5"),
    ]:
        out.append((system, solve_system(system, algo)[0]))
    return out


@functools.lru_cache(maxsize=None)
def corpus_results():
    """Outcomes of all system solvers on the solvable and the random-rhs corpora."""
    systems = system_corpus() + unsolvable_corpus()
    return [(s, {a: solve_system(s, a)[0] for a in SYSTEM_ALGOS}) for s in systems]


@functools.lru_cache(maxsize=None)
def equation_results():
    return [(e, solve_eq_gcd(e)[0], solve_eq_congruence(e)[0]) for e in equation_corpus()]


# -- criteria --------------------------------------------------------------


def test_criterion_1_worked_equation(criterion):
    with criterion(1, "gcd descent on 6x1 - 12x2 - 8x3 + 22x4 = 14 matches the worked lattice (p = 3, B = 10)"):
        out, _ = solve_eq_gcd(WORKED_EQ)
        assert isinstance(out, Solution) and out.gs.p == 3
        assert equivalent_on_box(WORKED_EQ, out.gs, WORKED_EQ_GS, 10)


def test_criterion_2_congruence_equation(criterion):
    with criterion(2, "congruence descent on 17x - 7y + 10z = -12: p = 2, equivalent, exactly 2 rounds"):
        out, trace = solve_eq_congruence(CONGRUENCE_EQ)
        assert out.gs.p == 2
        assert trace.iterations == 2
        assert equivalent_on_box(CONGRUENCE_EQ, out.gs, CONGRUENCE_EQ_GS, 10)


def test_criterion_3_system_regressions(criterion):
    with criterion(3, "system regressions: s1, s3, s5 match hand-worked lattices; s2, s4 self-verify (B = 8)"):
        for system, algo, expected in [
            (SUBST_SYS, "s1", SUBST_SYS_GS),
            (FRACTION_SYS, "s3", FRACTION_SYS_GS),
            (HYBRID_SYS, "s5", HYBRID_SYS_GS),
        ]:
            out, _ = solve_system(system, algo)
            assert equivalent_on_box(system, out.gs, expected, 10), algo
        for system, algo, p in [(ELIM_SYS, "s2", 1), (MODPIVOT_SYS, "s4", 3)]:
            out, _ = solve_system(system, algo)
            assert out.gs.p == p
            assert verify_symbolic(system, out.gs)
            assert structure_checks(system, out.gs).passed
            assert is_general_on_box(system, out.gs, 8)


def test_criterion_4_counterexample(criterion):
    with criterion(4, "candidate lattice for -13x1 + 3x2 - 4x3 = 0 passes all checks yet misses a box solution"):
        assert verify_symbolic(HOM_EQ, HOM_CANDIDATE)
        report = structure_checks(HOM_EQ, HOM_CANDIDATE)
        assert [c.status for c in report] == ["pass", "pass", "pass"]
        res = is_general_on_box(HOM_EQ, HOM_CANDIDATE, 10)
        assert not res.ok and res.witness is not None
        pts = brute_particulars(HOM_EQ, 10)
        assert res.witness in pts
        assert HOM_MISSED in pts


def test_criterion_5_cross_algorithm_agreement(criterion):
    with criterion(5, "five system solvers agree on 200 + 100 random systems; e1 and e2 agree on 500 equations"):
        results = corpus_results()
        solvable = results[:200]
        pairs = 0
        for system, outs in results:
            statuses = {a: isinstance(o, Solution) for a, o in outs.items()}
            assert len(set(statuses.values())) == 1, (system, statuses)
            if not statuses["s1"]:
                continue
            ps = {o.gs.p for o in outs.values()}
            assert len(ps) == 1
            # each lattice covers the box; pairwise equivalence follows from that and equal p
            for a, o in outs.items():
                res = is_general_on_box(system, o.gs, 6)
                assert res.ok, (system, a, res.witness)
            pairs += len(list(combinations(outs, 2)))
        assert all(isinstance(o, Solution) for _, outs in solvable for o in outs.values())
        assert pairs >= 200 * 10
        for eq, o1, o2 in equation_results():
            assert type(o1) is type(o2), eq
            if isinstance(o1, Solution):
                assert equivalent_on_box(eq, o1.gs, o2.gs, 6), eq


def _column_gcds_unit(gs):
    return all(math.gcd(*gs.column(j)) == 1 for j in range(gs.p))


def test_criterion_6_invariants(criterion):
    with criterion(6, "invariants hold for every solution from criteria 1 to 5"):
        produced = list(regression_solutions())
        for system, outs in corpus_results():
            produced.extend((system, o) for o in outs.values())
        for eq, o1, o2 in equation_results():
            produced.extend([(eq, o1), (eq, o2)])
        checked = homogeneous = row_gcd_cases = 0
        for system, outcome in produced:
            if not isinstance(outcome, Solution):
                continue
            gs = outcome.gs
            A = system.A
            assert all(sum(a * c[j] for a, c in zip(row, gs.C)) == 0 for row in A for j in range(gs.p))
            assert all(sum(a * v for a, v in zip(row, gs.d)) == bi for row, bi in zip(A, system.b))
            rank_c = matrix_rank([list(r) for r in gs.C]) if gs.p else 0
            assert rank_c == gs.p == system.n - matrix_rank(A)
            report = structure_checks(system, gs)
            assert report.passed, report
            if system.is_homogeneous:
                homogeneous += 1
                assert not any(gs.d) and _column_gcds_unit(gs)
                if system.m == 1 and math.gcd(*A[0]) == 1 and system.n > 1:
                    row_gcd_cases += 1
                    assert report.checks[2].status == "pass"
            checked += 1
        assert checked > 1000 and homogeneous > 50 and row_gcd_cases > 50


def test_criterion_7_feasibility_consistency(criterion):
    with criterion(7, "every guaranteed feasibility verdict has a solution; gcd witnesses are exact"):
        guaranteed = witnesses = 0
        for system, outs in corpus_results():
            reduced = independent_rows(system)
            found = isinstance(outs["s5"], Solution)
            if isinstance(reduced, Inconsistent):
                assert not found
                continue
            if matrix_rank(reduced.A) == 0:
                continue
            verdict = feasibility_cramer(reduced, exhaustive=True)
            if verdict.status == "guaranteed":
                guaranteed += 1
                assert found, system
            for o in outs.values():
                if isinstance(o, NoSolution) and "gcd" in o.witness:
                    g, b = o.witness["gcd"], o.witness["b"]
                    witnesses += 1
                    assert (g == 0 and b != 0) or (g > 0 and b % g != 0)
        for eq, o1, o2 in equation_results():
            for o in (o1, o2):
                if isinstance(o, NoSolution):
                    g, b = o.witness["gcd"], o.witness["b"]
                    assert g == math.gcd(*eq.A[0]) and b == eq.b[0]
                    assert (g == 0 and b != 0) or (g > 0 and b % g != 0)
                    witnesses += 1
        assert guaranteed > 100 and witnesses > 50


def test_criterion_8_bench_reproducible(criterion, tmp_path, capsys):
    with criterion(8, "bench with seed 1 is byte-reproducible and reports the e2 <= e1 fraction"):
        args = ["bench", "--seed", "1", "--trials", "100", "--max-n", "4", "--max-coeff", "30"]
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli_main(args + ["--output", str(first)]) == 0
        report = capsys.readouterr().out
        proc = subprocess.run(
            [sys.executable, "-m", "dioph.cli", *args, "--output", str(second)],
            capture_output=True,
            text=True,
            check=True,
        )
        assert first.read_bytes() == second.read_bytes()
        lines = first.read_text().splitlines()
        assert lines[0] == "instance_id,n,e1_iterations,e2_iterations,e1_peak_coeff,e2_peak_coeff"
        assert len(lines) == 101
        assert "e2 iterations <= e1 iterations on" in report
        assert report == proc.stdout
        with capsys.disabled():
            print(f"\n  bench report: {report.strip()}")
