"""Formula trees, the ASCII surface syntax, and a canonical printer.

Grammar, loosest binding first::

    formula := imp
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | atom
    atom    := VAR | "(" formula ")"
    VAR     := "p" [0-9]+
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import FormulaSyntaxError


@dataclass(frozen=True)
class Var:
    id: int


@dataclass(frozen=True)
class Neg:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Neg, And, Or, Imp]
BINARY = (And, Or, Imp)


def variables(f: Formula) -> set[int]:
    if isinstance(f, Var):
        return {f.id}
    if isinstance(f, Neg):
        return variables(f.child)
    return variables(f.left) | variables(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, Neg):
        return 1 + depth(f.child)
    return 1 + max(depth(f.left), depth(f.right))


def substitute(f: Formula, var: int, g: Formula) -> Formula:
    """Replace every occurrence of ``p<var>`` in ``f`` by ``g``."""
    if isinstance(f, Var):
        return g if f.id == var else f
    if isinstance(f, Neg):
        return Neg(substitute(f.child, var, g))
    return type(f)(substitute(f.left, var, g), substitute(f.right, var, g))


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>p[0-9]+)|(?P<op>->|[~&|()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "var", an operator string, or "end"
    text: str
    offset: int


def _tokenize(text: str) -> Iterator[_Tok]:
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            yield _Tok("end", "", len(text.encode()))
            return
        m = _TOKEN.match(text, pos)
        offset = len(text[:pos].encode())
        if m is None:
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", offset)
        if m.group("var"):
            yield _Tok("var", m.group("var"), len(text[: m.start("var")].encode()))
        else:
            yield _Tok(m.group("op"), m.group("op"), len(text[: m.start("op")].encode()))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokenize(text))
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok | None:
        tok = self.cur
        if tok.kind == kind:
            self.i += 1
            return tok
        return None

    def fail(self, what: str):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise FormulaSyntaxError(f"expected {what}, found {found}", tok.offset)

    def formula(self) -> Formula:
        left = self.disj()
        if self.take("->"):
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.take("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.take("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.take("~"):
            return Neg(self.unary())
        tok = self.take("var")
        if tok is not None:
            return Var(int(tok.text[1:]))
        if self.take("("):
            f = self.formula()
            if not self.take(")"):
                self.fail("')'")
            return f
        self.fail("a variable, '~' or '('")


def parse_formula(text: str) -> Formula:
    """Parse ASCII syntax (``~ & | ->``, variables ``p0, p1, ...``) into a tree.

    Raises :class:`FormulaSyntaxError` carrying the byte offset of the
    offending token.
    """
    parser = _Parser(text)
    f = parser.formula()
    if parser.cur.kind != "end":
        parser.fail("end of input")
    return f


# -- printer -----------------------------------------------------------------

_PREC = {Imp: 0, Or: 1, And: 2, Neg: 3, Var: 4}
_SYMBOL = {Imp: "->", Or: "|", And: "&"}


def format_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses that parse back to ``f``."""
    if isinstance(f, Var):
        return f"p{f.id}"
    if isinstance(f, Neg):
        inner = format_formula(f.child)
        return "~" + (f"({inner})" if isinstance(f.child, BINARY) else inner)
    prec = _PREC[type(f)]
    left, right = format_formula(f.left), format_formula(f.right)
    if isinstance(f, Imp):
        # right-associative
        left_paren = _PREC[type(f.left)] <= prec
        right_paren = _PREC[type(f.right)] < prec
    else:
        left_paren = _PREC[type(f.left)] < prec
        right_paren = _PREC[type(f.right)] <= prec
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"
