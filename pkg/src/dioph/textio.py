"""Text formats: the equation input language and solution output.

Input is one linear equation per line, in the notation used for hand
calculations::

    # comment
    6x1 - 12x2 - 8x3 + 22x4 = 14
    3*a + 2b - c = 0

Terms may sit on either side of ``=``.  Output comes in a human form
(``x1 = 2k1 - 5k2 + 5``) and a machine form: a JSON document whose integers
are all decimal strings, so no consumer loses precision.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .model import GeneralSolution, LinearSystem, NoSolution, Solution, SolveOutcome

__all__ = [
    "ParseError",
    "SourceSpan",
    "format_system",
    "load_solution",
    "parse_system",
    "render",
]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan | None = None) -> None:
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


_TERM = re.compile(
    r"""\s*(?P<sign>[+\-−])?\s*
        (?:
            (?P<coef>\d+)\s*(?:[*·]\s*)?(?P<var>[A-Za-z][A-Za-z0-9_]*)
          | (?P<bare>[A-Za-z][A-Za-z0-9_]*)
          | (?P<num>\d+)
        )\s*""",
    re.VERBOSE,
)


def _parse_side(text: str, line: int, offset: int, acc: dict, order: list) -> int:
    """Accumulate one side of an equation; returns its constant term."""
    pos, const = 0, 0
    if not text.strip():
        raise ParseError("empty side of equation", SourceSpan(line, offset + 1))
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            col = offset + pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected input {text[pos:].strip()[:10]!r}", SourceSpan(line, col))
        if m.group("sign") is None and pos > 0:
            col = offset + m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
            raise ParseError("missing '+' or '-' between terms", SourceSpan(line, col))
        sign = -1 if m.group("sign") in ("-", "−") else 1
        if m.group("num") is not None:
            const += sign * int(m.group("num"))
        else:
            name = m.group("var") or m.group("bare")
            coef = int(m.group("coef")) if m.group("coef") else 1
            if name not in acc:
                acc[name] = 0
            if name not in order:
                order.append(name)
            acc[name] += sign * coef
        pos = m.end()
    return const


def parse_system(text: str) -> LinearSystem:
    """Parse one equation per non-blank, non-comment line."""
    order: list[str] = []
    rows: list[tuple[dict, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        count = raw.count("=")
        if count == 0:
            raise ParseError("equation has no '='", SourceSpan(lineno, len(raw) - len(raw.lstrip()) + 1))
        if count > 1:
            raise ParseError("more than one '='", SourceSpan(lineno, raw.index("=", raw.index("=") + 1) + 1))
        eq = raw.index("=")
        left, right = {}, {}
        lc = _parse_side(raw[:eq], lineno, 0, left, order)
        rc = _parse_side(raw[eq + 1 :], lineno, eq + 1, right, order)
        coeffs = dict(left)
        for name, c in right.items():
            coeffs[name] = coeffs.get(name, 0) - c
        rows.append((coeffs, rc - lc))
    if not rows:
        raise ParseError("no equations in input")
    A = [[coeffs.get(name, 0) for name in order] for coeffs, _ in rows]
    if not order:
        raise ParseError("no variables in input")
    return LinearSystem(order, A, [b for _, b in rows])


# -- output ----------------------------------------------------------------


def _linear(coeffs, names, const: int, keep=()) -> str:
    parts: list[str] = []
    for c, name in zip(coeffs, names):
        if not c and name not in keep:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        if not parts:
            parts.append(f"{'-' if c < 0 else ''}{mag}{name}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {mag}{name}")
    if const or not parts:
        if not parts:
            parts.append(str(const))
        else:
            parts.append(f"{'-' if const < 0 else '+'} {abs(const)}")
    return " ".join(parts)


def format_system(sys: LinearSystem) -> str:
    """Write ``sys`` back in the input language.

    Variables absent from every row are written with a zero coefficient in
    the first row so that parsing the text recovers all of them.
    """
    unused = {v for j, v in enumerate(sys.vars) if not any(row[j] for row in sys.A)}
    lines = []
    for i, (row, bi) in enumerate(zip(sys.A, sys.b)):
        keep = unused if i == 0 else ()
        if not any(row) and not keep:
            keep = {sys.vars[0]}
        lines.append(f"{_linear(row, sys.vars, 0, keep)} = {bi}")
    return "\n".join(lines) + "\n"


def _render_human(outcome: SolveOutcome) -> str:
    if isinstance(outcome, NoSolution):
        lines = [f"no integer solution: {outcome.reason}"]
        if outcome.witness:
            lines.append("witness: " + ", ".join(f"{k} = {v}" for k, v in outcome.witness.items()))
        return "\n".join(lines) + "\n"
    gs = outcome.gs
    lines = [f"{v} = {_linear(row, gs.params, d)}" for v, row, d in zip(gs.vars, gs.C, gs.d)]
    if gs.p:
        lines.append(f"where {', '.join(gs.params)} range over the integers")
    return "\n".join(lines) + "\n"


def _stringify(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    return value


def _render_machine(outcome: SolveOutcome) -> str:
    if isinstance(outcome, NoSolution):
        doc = {
            "status": "no_solution",
            "reason": outcome.reason,
            "witness": {k: _stringify(v) for k, v in outcome.witness.items()},
        }
    else:
        gs = outcome.gs
        doc = {
            "status": "solution",
            "vars": list(gs.vars),
            "p": gs.p,
            "C": [[str(v) for v in row] for row in gs.C],
            "d": [str(v) for v in gs.d],
        }
    return json.dumps(doc, indent=2) + "\n"


def render(outcome: SolveOutcome | GeneralSolution, format: str = "human") -> str:
    if isinstance(outcome, GeneralSolution):
        outcome = Solution(outcome)
    if format == "human":
        return _render_human(outcome)
    if format == "machine":
        return _render_machine(outcome)
    raise ValueError(f"unknown format {format!r}")


def load_solution(text: str) -> SolveOutcome:
    """Inverse of the machine format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid solution document: {exc.msg}", SourceSpan(exc.lineno, exc.colno)) from None
    if not isinstance(doc, dict) or "status" not in doc:
        raise ParseError("solution document lacks a status field")
    try:
        if doc["status"] == "no_solution":
            return NoSolution(doc.get("reason", ""), dict(doc.get("witness", {})))
        if doc["status"] != "solution":
            raise ParseError(f"unknown status {doc['status']!r}")
        p = int(doc["p"])
        C = [[int(v) for v in row] for row in doc["C"]]
        d = [int(v) for v in doc["d"]]
        return Solution(GeneralSolution(doc["vars"], C, d, p))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed solution document: {exc}") from None
