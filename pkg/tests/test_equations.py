import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dioph.equations import solve_eq_congruence, solve_eq_gcd, solve_equation
from dioph.model import LinearSystem, NoSolution, Solution
from dioph.oracle import equivalent_on_box, is_general_on_box, structure_checks, verify_symbolic

from cases import CONGRUENCE_EQ, CONGRUENCE_EQ_GS, HOM_EQ, WORKED_EQ, WORKED_EQ_GS

SOLVERS = [solve_eq_gcd, solve_eq_congruence]


def test_gcd_descent_reproduces_worked_lattice():
    out, trace = solve_eq_gcd(WORKED_EQ)
    # the descent's choices give literally the hand-derived matrix
    assert out.gs == WORKED_EQ_GS
    assert trace.iterations == 3


def test_congruence_two_rounds():
    out, trace = solve_eq_congruence(CONGRUENCE_EQ)
    assert out.gs.p == 2
    assert trace.iterations == 2
    assert equivalent_on_box(CONGRUENCE_EQ, out.gs, CONGRUENCE_EQ_GS, 10)


@pytest.mark.parametrize("solver", SOLVERS)
def test_gcd_obstruction(solver):
    out, _ = solver(LinearSystem.equation([2, 4], 7))
    assert isinstance(out, NoSolution)
    assert out.witness == {"gcd": 2, "b": 7}


@pytest.mark.parametrize("solver", SOLVERS)
def test_zero_equation(solver):
    out, _ = solver(LinearSystem.equation([0, 0], 0))
    assert out.gs.p == 2
    bad, _ = solver(LinearSystem.equation([0, 0], 3))
    assert isinstance(bad, NoSolution) and bad.witness["gcd"] == 0


@pytest.mark.parametrize("solver", SOLVERS)
def test_small_cases(solver):
    out, _ = solver(LinearSystem.equation([3, 5], 1))
    assert out.gs.p == 1
    assert is_general_on_box(LinearSystem.equation([3, 5], 1), out.gs, 10)
    one, _ = solver(LinearSystem.equation([4], 8))
    assert one.gs.p == 0 and one.gs.d == (2,)
    none, _ = solver(LinearSystem.equation([4], 6))
    assert isinstance(none, NoSolution)


@pytest.mark.parametrize("solver", SOLVERS)
def test_homogeneous_standard_form(solver):
    out, _ = solver(HOM_EQ)
    assert out.gs.d == (0, 0, 0)
    report = structure_checks(HOM_EQ, out.gs)
    assert [c.status for c in report] == ["pass", "pass", "pass"]
    assert is_general_on_box(HOM_EQ, out.gs, 10)


def test_homogeneous_gcd_descent_lattice():
    out, _ = solve_eq_gcd(HOM_EQ)
    assert out.gs.C == ((-1, 3), (-3, 13), (1, 0))


def test_solve_equation_dispatch():
    assert solve_equation(WORKED_EQ, "gcd")[0] == solve_eq_gcd(WORKED_EQ)[0]
    with pytest.raises(ValueError):
        solve_equation(WORKED_EQ, "nope")
    with pytest.raises(ValueError):
        solve_eq_gcd(LinearSystem(None, [[1, 2], [3, 4]], [0, 0]))


coeffs = st.lists(st.integers(-25, 25), min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(coeffs, st.integers(-60, 60))
def test_solvers_agree_and_verify(a, b):
    eq = LinearSystem.equation(a, b)
    (o1, _), (o2, _) = solve_eq_gcd(eq), solve_eq_congruence(eq)
    assert type(o1) is type(o2)
    if isinstance(o1, Solution):
        assert verify_symbolic(eq, o1.gs) and verify_symbolic(eq, o2.gs)
        assert o1.gs.p == o2.gs.p == len(a) - (1 if any(a) else 0)
        if len(a) <= 3:
            assert equivalent_on_box(eq, o1.gs, o2.gs, 5)
