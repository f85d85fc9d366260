"""Hilbert-style proof checking for classical (CL) and intuitionistic (IL) logic.

Both systems share schemas 1-11 and modus ponens; CL adds excluded middle
as schema 12.  Schema patterns are written with ``p0, p1, p2`` standing for
the metavariables alpha, beta, gamma.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Union

from ..errors import FormulaSyntaxError, ProofFormatError
from .syntax import Formula, Imp, Neg, Var, format_formula, parse_formula

META_NAMES = ("alpha", "beta", "gamma")

_SCHEMA_TEXT = {
    1: "p0 -> p0 & p0",
    2: "p0 & p1 -> p1 & p0",
    3: "(p0 -> p1) -> (p0 & p2 -> p1 & p2)",
    4: "(p0 -> p1) & (p1 -> p2) -> (p0 -> p2)",
    5: "p1 -> (p0 -> p1)",
    6: "p0 & (p0 -> p1) -> p1",
    7: "p0 -> p0 | p1",
    8: "p0 | p1 -> p1 | p0",
    9: "(p0 -> p2) & (p1 -> p2) -> (p0 | p1 -> p2)",
    10: "~p0 -> (p0 -> p1)",
    11: "(p0 -> p1) & (p0 -> ~p1) -> ~p0",
    12: "p0 | ~p0",
}
SCHEMAS: dict[int, Formula] = {k: parse_formula(t) for k, t in _SCHEMA_TEXT.items()}
IL_SCHEMAS = tuple(range(1, 12))
EXCLUDED_MIDDLE = 12


class System(Enum):
    CL = "CL"
    IL = "IL"


def _match(pattern: Formula, f: Formula, bindings: dict[str, Formula]) -> bool:
    if isinstance(pattern, Var):
        name = META_NAMES[pattern.id]
        bound = bindings.get(name)
        if bound is None:
            bindings[name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, Neg):
        return _match(pattern.child, f.child, bindings)
    return _match(pattern.left, f.left, bindings) and _match(pattern.right, f.right, bindings)


def match_schema(f: Formula, schema: int) -> dict[str, Formula] | None:
    """Bindings of alpha/beta/gamma making ``f`` an instance of ``schema``, or None."""
    if schema not in SCHEMAS:
        raise ValueError(f"no axiom schema {schema}; schemas are numbered 1..12")
    bindings: dict[str, Formula] = {}
    return bindings if _match(SCHEMAS[schema], f, bindings) else None


def instantiate(schema: int, alpha: Formula, beta: Formula | None = None,
                gamma: Formula | None = None) -> Formula:
    """Substitute formulas for the metavariables of ``schema``."""
    subst = dict(enumerate((alpha, beta, gamma)))

    def go(p: Formula) -> Formula:
        if isinstance(p, Var):
            if subst[p.id] is None:
                raise ValueError(f"schema {schema} needs {META_NAMES[p.id]}")
            return subst[p.id]
        if isinstance(p, Neg):
            return Neg(go(p.child))
        return type(p)(go(p.left), go(p.right))

    return go(SCHEMAS[schema])


@dataclass(frozen=True)
class Axiom:
    schema: int


@dataclass(frozen=True)
class MP:
    """Modus ponens from line ``i`` (alpha) and line ``j`` (alpha -> beta)."""

    i: int
    j: int


Justification = Union[Axiom, MP]


@dataclass(frozen=True)
class Proof:
    lines: tuple[tuple[Formula, Justification], ...]
    system: System = System.IL


class Reason(Enum):
    SCHEMA_MISMATCH = "SchemaMismatch"
    FORBIDDEN_AXIOM12_IN_IL = "ForbiddenAxiom12InIL"
    BAD_MP = "BadMP"
    FORWARD_REFERENCE = "ForwardReference"


@dataclass(frozen=True)
class Rejection:
    line: int  # 1-based
    reason: Reason
    detail: str = ""

    def __str__(self) -> str:
        s = f"line {self.line}: {self.reason.value}"
        return f"{s} ({self.detail})" if self.detail else s


def check_proof(proof: Proof) -> Rejection | None:
    """Check each line in order; return the first failure, or None if accepted.

    Line references are 1-based.  An MP step citing (i, j) requires line j
    to be exactly ``line_i -> this line``.
    """
    formulas = [f for f, _ in proof.lines]
    for n, (f, just) in enumerate(proof.lines, start=1):
        if isinstance(just, Axiom):
            if just.schema == EXCLUDED_MIDDLE and proof.system is System.IL:
                return Rejection(n, Reason.FORBIDDEN_AXIOM12_IN_IL)
            if just.schema not in SCHEMAS:
                return Rejection(n, Reason.SCHEMA_MISMATCH, f"no schema {just.schema}")
            if match_schema(f, just.schema) is None:
                return Rejection(n, Reason.SCHEMA_MISMATCH,
                                 f"not an instance of schema {just.schema}")
        elif isinstance(just, MP):
            if just.i >= n or just.j >= n:
                return Rejection(n, Reason.FORWARD_REFERENCE)
            if just.i < 1 or just.j < 1:
                return Rejection(n, Reason.BAD_MP, "line numbers start at 1")
            major = formulas[just.j - 1]
            minor = formulas[just.i - 1]
            if not (isinstance(major, Imp) and major.left == minor and major.right == f):
                return Rejection(n, Reason.BAD_MP,
                                 f"line {just.j} is not line {just.i} -> line {n}")
        else:
            raise TypeError(f"unknown justification {just!r}")
    return None


# -- proof files ---------------------------------------------------------------

_HEADER = re.compile(r"system\s*:\s*(\w+)\s*$", re.IGNORECASE)
_STEP = re.compile(r"(\d+)\s*\.\s*(.*?)\s*;\s*(.*)$")


def parse_proof(text: str) -> Proof:
    """Read the line-oriented proof format.

    ::

        system: IL
        1. p0 -> p0 & p0 ; AX 1
        2. ... ; MP 1 2      # comments run to end of line
    """
    system = None
    lines: list[tuple[Formula, Justification]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if system is None:
            m = _HEADER.match(line)
            if not m or m.group(1).upper() not in ("CL", "IL"):
                raise ProofFormatError("expected header 'system: CL' or 'system: IL'", lineno)
            system = System(m.group(1).upper())
            continue
        m = _STEP.match(line)
        if not m:
            raise ProofFormatError("expected '<n>. <formula> ; AX <k>' or '; MP <i> <j>'", lineno)
        if int(m.group(1)) != len(lines) + 1:
            raise ProofFormatError(f"step numbered {m.group(1)}, expected {len(lines) + 1}", lineno)
        try:
            f = parse_formula(m.group(2))
        except FormulaSyntaxError as exc:
            raise ProofFormatError(str(exc), lineno) from None
        just = m.group(3).split()
        if len(just) == 2 and just[0].upper() == "AX" and just[1].isdigit():
            lines.append((f, Axiom(int(just[1]))))
        elif len(just) == 3 and just[0].upper() == "MP" and just[1].isdigit() and just[2].isdigit():
            lines.append((f, MP(int(just[1]), int(just[2]))))
        else:
            raise ProofFormatError(f"bad justification {m.group(3)!r}", lineno)
    if system is None:
        raise ProofFormatError("missing 'system:' header", 1)
    return Proof(tuple(lines), system)


def format_proof(proof: Proof) -> str:
    out = [f"system: {proof.system.value}"]
    for n, (f, just) in enumerate(proof.lines, start=1):
        j = f"AX {just.schema}" if isinstance(just, Axiom) else f"MP {just.i} {just.j}"
        out.append(f"{n}. {format_formula(f)} ; {j}")
    return "\n".join(out) + "\n"
