"""3-CNF formulas in DIMACS form and a truth-table satisfiability check."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from ..errors import InputError

MAX_BRUTE_VARS = 20


@dataclass(frozen=True)
class Literal:
    var: int
    negated: bool = False

    def value(self, assignment: dict[int, bool] | tuple[bool, ...]) -> bool:
        v = assignment[self.var] if isinstance(assignment, dict) else assignment[self.var - 1]
        return not v if self.negated else v

    def dimacs(self) -> int:
        return -self.var if self.negated else self.var


@dataclass(frozen=True)
class Formula3CNF:
    nvars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        for c in self.clauses:
            if len(c) != 3:
                raise InputError("NOT_3SAT", f"clause of length {len(c)}")
            for lit in c:
                if not 1 <= lit.var <= self.nvars:
                    raise InputError("MALFORMED", f"variable {lit.var} outside 1..{self.nvars}")

    @classmethod
    def of(cls, nvars: int, clauses: Iterable[Iterable[int]]) -> "Formula3CNF":
        """From DIMACS-style signed integers, e.g. ``[(-1, 2, 3)]``."""
        return cls(nvars, tuple(tuple(Literal(abs(x), x < 0) for x in c) for c in clauses))

    def satisfied_by(self, assignment) -> bool:
        return all(any(lit.value(assignment) for lit in c) for c in self.clauses)


def parse_cnf(text: str | Iterable[str]) -> Formula3CNF:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = None
    tokens: list[int] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise InputError("MALFORMED", f"line {lineno}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise InputError("MALFORMED", f"line {lineno}: bad header {line!r}") from None
            continue
        if header is None:
            raise InputError("MALFORMED", "clause before 'p cnf' header")
        try:
            tokens += [int(x) for x in parts]
        except ValueError:
            raise InputError("MALFORMED", f"line {lineno}: {line!r}") from None
    if header is None:
        raise InputError("MALFORMED", "missing 'p cnf <vars> <clauses>' header")
    clauses: list[list[int]] = []
    cur: list[int] = []
    for x in tokens:
        if x == 0:
            clauses.append(cur)
            cur = []
        else:
            cur.append(x)
    if cur:
        raise InputError("MALFORMED", "last clause not terminated by 0")
    nvars, ncl = header
    if len(clauses) != ncl:
        raise InputError("MALFORMED", f"header declares {ncl} clauses, found {len(clauses)}")
    for c in clauses:
        if len(c) != 3:
            raise InputError("NOT_3SAT", f"clause {c} has {len(c)} literals")
        if any(abs(x) > nvars for x in c):
            raise InputError("MALFORMED", f"clause {c} mentions a variable above {nvars}")
    return Formula3CNF.of(nvars, clauses)


def serialize_cnf(f: Formula3CNF) -> str:
    lines = [f"p cnf {f.nvars} {len(f.clauses)}"]
    lines += [" ".join(str(lit.dimacs()) for lit in c) + " 0" for c in f.clauses]
    return "\n".join(lines)


def brute_force_sat(f: Formula3CNF) -> tuple[bool, ...] | None:
    """First satisfying assignment in truth-table order (False before True), or None."""
    if f.nvars > MAX_BRUTE_VARS:
        raise InputError("MALFORMED", f"truth tables are limited to {MAX_BRUTE_VARS} variables")
    for row in product((False, True), repeat=f.nvars):
        if f.satisfied_by(row):
            return row
    return None
