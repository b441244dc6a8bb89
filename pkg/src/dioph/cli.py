"""``dioph`` command line: solve, verify, bench, enumerate.

Exit status: 0 success, 1 no solution or a failed check, 2 usage or parse
error, 3 a solver produced a lattice that failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from typing import Sequence

from .equations import solve_eq_congruence, solve_eq_gcd, solve_equation
from .model import LinearSystem, NoSolution, SolverError
from .oracle import BudgetExceeded, brute_particulars, is_general_on_box, structure_checks, verify_symbolic
from .systems import solve_system
from .textio import ParseError, load_solution, parse_system, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

BENCH_COLUMNS = ["instance_id", "n", "e1_iterations", "e2_iterations", "e1_peak_coeff", "e2_peak_coeff"]


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_system(path: str) -> LinearSystem:
    try:
        return parse_system(_read(path))
    except (ParseError, ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _err(msg: str) -> None:
    print(f"dioph: {msg}", file=sys.stderr)


# -- solve -----------------------------------------------------------------


def run_solver(system: LinearSystem, algorithm: str):
    if algorithm == "auto":
        algorithm = "e2" if system.m == 1 else "s5"
    if algorithm in ("e1", "e2"):
        if system.m != 1:
            raise UsageError(f"{algorithm} solves a single equation, input has {system.m}")
        return solve_equation(system, algorithm)
    return solve_system(system, algorithm)


def cmd_solve(args) -> int:
    system = _load_system(args.input)
    try:
        outcome, trace = run_solver(system, args.algorithm)
    except SolverError as exc:
        _err(f"internal verification failure: {exc}")
        return EXIT_INTERNAL
    if not isinstance(outcome, NoSolution) and not verify_symbolic(system, outcome.gs):
        _err("internal verification failure: lattice does not satisfy the system")
        return EXIT_INTERNAL
    sys.stdout.write(render(outcome, args.format))
    if args.trace:
        line = f"trace: iterations={trace.iterations} substitutions={trace.substitutions} peak_coeff={trace.peak_coeff}"
        print(line, file=sys.stderr if args.format == "machine" else sys.stdout)
    return EXIT_FAIL if isinstance(outcome, NoSolution) else EXIT_OK


# -- verify ----------------------------------------------------------------


def _align(system: LinearSystem, gs):
    if set(gs.vars) != set(system.vars) or len(gs.vars) != len(system.vars):
        raise UsageError(
            f"variables differ: system has {', '.join(system.vars)}; solution has {', '.join(gs.vars)}"
        )
    if gs.vars == system.vars:
        return gs
    from .model import GeneralSolution

    idx = [gs.vars.index(v) for v in system.vars]
    return GeneralSolution(system.vars, [gs.C[i] for i in idx], [gs.d[i] for i in idx], gs.p)


def cmd_verify(args) -> int:
    system = _load_system(args.system)
    try:
        outcome = load_solution(_read(args.solution))
    except ParseError as exc:
        raise UsageError(f"{args.solution}: {exc}") from None
    if isinstance(outcome, NoSolution):
        raise UsageError("solution file records no solution; nothing to verify")
    gs = _align(system, outcome.gs)
    if not verify_symbolic(system, gs):
        print("symbolic: FAIL (A C = 0 and A d = b do not both hold)")
        return EXIT_FAIL
    print("symbolic: pass")
    failed = False
    for check in structure_checks(system, gs):
        detail = ", ".join(f"{k}={v}" for k, v in check.detail.items())
        print(f"structure.{check.name}: {check.status}" + (f" ({detail})" if detail else ""))
        failed |= check.status == "fail"
    try:
        res = is_general_on_box(system, gs, args.box)
    except BudgetExceeded as exc:
        print(f"box[{args.box}]: not checked ({exc})")
        return EXIT_FAIL
    if res.ok:
        print(f"box[{args.box}]: pass ({res.checked} particular solutions covered)")
    else:
        witness = " ".join(str(v) for v in res.witness)
        print(f"box[{args.box}]: FAIL, counterexample {witness} is not reached by integer parameters")
        failed = True
    return EXIT_FAIL if failed else EXIT_OK


# -- bench -----------------------------------------------------------------


def bench_rows(trials: int, seed: int, max_n: int, max_coeff: int):
    rng = random.Random(seed)
    for i in range(trials):
        n = rng.randint(2, max_n)
        while True:
            a = [rng.randint(-max_coeff, max_coeff) for _ in range(n)]
            if any(a):
                break
        x = [rng.randint(-max_coeff, max_coeff) for _ in range(n)]
        eq = LinearSystem.equation(a, sum(ai * xi for ai, xi in zip(a, x)))
        _, t1 = solve_eq_gcd(eq)
        _, t2 = solve_eq_congruence(eq)
        yield [i, n, t1.iterations, t2.iterations, t1.peak_coeff, t2.peak_coeff]


def cmd_bench(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    if args.max_coeff < 1:
        raise UsageError("--max-coeff must be positive")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    wins = 0
    for row in bench_rows(args.trials, args.seed, args.max_n, args.max_coeff):
        writer.writerow(row)
        wins += row[3] <= row[2]
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        report = sys.stdout
    else:
        sys.stdout.write(buf.getvalue())
        report = sys.stderr
    if args.trials:
        print(f"e2 iterations <= e1 iterations on {wins}/{args.trials} instances ({wins / args.trials:.3f})", file=report)
    else:
        print("no instances generated", file=report)
    return EXIT_OK


# -- enumerate -------------------------------------------------------------


def cmd_enumerate(args) -> int:
    system = _load_system(args.system)
    try:
        pts = brute_particulars(system, args.box)
    except BudgetExceeded as exc:
        _err(str(exc))
        return EXIT_FAIL
    for pt in pts:
        print(" ".join(str(v) for v in pt))
    return EXIT_OK


# -- wiring ----------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dioph", description="General integer solutions of linear Diophantine systems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an equation or system")
    s.add_argument("--algorithm", choices=["e1", "e2", "s1", "s2", "s3", "s4", "s5", "auto"], default="auto")
    s.add_argument("--input", default="-", help="input file, or '-' for stdin")
    s.add_argument("--format", choices=["human", "machine"], default="human")
    s.add_argument("--trace", action="store_true", help="report iterations, substitutions, peak coefficient")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against a system")
    v.add_argument("--system", required=True)
    v.add_argument("--solution", required=True, help="solution in machine format")
    v.add_argument("--box", type=_nonneg, default=10)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="compare e1 and e2 on random equations")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--max-n", type=int, default=4)
    b.add_argument("--max-coeff", type=int, default=30)
    b.add_argument("--output", default=None, help="CSV destination (stdout if omitted)")
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("enumerate", help="list particular solutions in a box")
    e.add_argument("--system", required=True)
    e.add_argument("--box", type=_nonneg, default=10)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
