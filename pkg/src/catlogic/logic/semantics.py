"""Heyting-valued semantics of propositional formulas and validity checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import BudgetExceeded, UnassignedVariable
from ..order import Heyting
from .syntax import And, Formula, Imp, Neg, Or, Var, variables

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Valuation:
    algebra: Heyting
    assignment: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.algebra.check_index(*self.assignment.values())


def eval_formula(f: Formula, v: Valuation) -> int:
    """Value of ``f`` under ``v``: ~ is a => bot, & meet, | join, -> imp."""
    h = v.algebra
    if isinstance(f, Var):
        try:
            return v.assignment[f.id]
        except KeyError:
            raise UnassignedVariable(f.id) from None
    if isinstance(f, Neg):
        return h.imp[eval_formula(f.child, v)][h.bot]
    a, b = eval_formula(f.left, v), eval_formula(f.right, v)
    if isinstance(f, And):
        return h.meet[a][b]
    if isinstance(f, Or):
        return h.join[a][b]
    if isinstance(f, Imp):
        return h.imp[a][b]
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Countermodel:
    assignment: dict[int, int]
    value: int

    def describe(self, h: Heyting) -> str:
        parts = ", ".join(f"p{k} = {h.label(x)}" for k, x in sorted(self.assignment.items()))
        return f"{parts} gives {h.label(self.value)}"


class _Tables:
    def __init__(self, h: Heyting):
        self.h = h
        self.meet = np.array(h.meet, dtype=np.int32)
        self.join = np.array(h.join, dtype=np.int32)
        self.imp = np.array(h.imp, dtype=np.int32)

    def evaluate(self, f: Formula, cols: dict[int, np.ndarray]) -> np.ndarray:
        if isinstance(f, Var):
            return cols[f.id]
        if isinstance(f, Neg):
            return self.imp[self.evaluate(f.child, cols), self.h.bot]
        a = self.evaluate(f.left, cols)
        b = self.evaluate(f.right, cols)
        if isinstance(f, And):
            return self.meet[a, b]
        if isinstance(f, Or):
            return self.join[a, b]
        return self.imp[a, b]


def check_validity(f: Formula, h: Heyting, budget: int = DEFAULT_BUDGET) -> Countermodel | None:
    """Search every valuation of ``f``'s variables for one not giving top.

    Valuations are visited as base-``|h|`` counters with the lowest-numbered
    variable most significant, so the reported countermodel is the least one
    in that order.  Returns ``None`` when ``f`` is valid in ``h``.
    """
    vs = sorted(variables(f))
    n, k = len(vs), h.size
    total = k ** n
    if total > budget:
        raise BudgetExceeded(n, k, budget)
    tables = _Tables(h)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        cols = {}
        rest = idx
        for var in reversed(vs):
            cols[var] = (rest % k).astype(np.int32)
            rest = rest // k
        values = np.broadcast_to(tables.evaluate(f, cols), idx.shape)
        bad = np.flatnonzero(values != h.top)
        if bad.size:
            i = int(bad[0])
            assignment = {var: int(cols[var][i]) for var in vs}
            return Countermodel(assignment, int(values[i]))
    return None


def is_valid(f: Formula, h: Heyting, budget: int = DEFAULT_BUDGET) -> bool:
    return check_validity(f, h, budget) is None
