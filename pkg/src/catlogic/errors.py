"""Exception hierarchy shared by every catlogic module."""

from __future__ import annotations


class CatLogicError(Exception):
    """Base class for all errors raised by catlogic."""


# posets and algebras

class PosetError(CatLogicError, ValueError):
    pass


class DuplicateLabel(PosetError):
    pass


class UnknownLabel(PosetError):
    pass


class CycleDetected(PosetError):
    """The reflexive-transitive closure of the order pairs is not antisymmetric."""


class PosetTooLarge(PosetError):
    pass


class NoTopElement(PosetError):
    pass


class AlgebraTooLarge(CatLogicError, ValueError):
    pass


class IndexOutOfRange(CatLogicError, IndexError):
    pass


# propositional logic

class FormulaSyntaxError(CatLogicError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class UnassignedVariable(CatLogicError, KeyError):
    def __init__(self, var: int):
        super().__init__(var)
        self.var = var

    def __str__(self) -> str:
        return f"variable p{self.var} has no assigned value"


class BudgetExceeded(CatLogicError):
    def __init__(self, n_vars: int, algebra_size: int, budget: int):
        super().__init__(
            f"{algebra_size}^{n_vars} valuations exceed the budget of {budget}"
        )
        self.n_vars = n_vars
        self.algebra_size = algebra_size
        self.budget = budget


class ProofFormatError(CatLogicError, ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# omega-valued sets

class EquivalenceBroken(CatLogicError):
    """The three characterisations of the point order disagree on a pair."""

    def __init__(self, p: int, q: int):
        super().__init__(f"point-order characterisations disagree on ({p}, {q})")
        self.p = p
        self.q = q


class NotUpperBound(CatLogicError, ValueError):
    def __init__(self, p: int, witness: int):
        super().__init__(f"point {p} is not an upper bound: {witness} is not below it")
        self.p = p
        self.witness = witness


class InvalidInstance(CatLogicError, ValueError):
    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


# monads

class LawViolationError(CatLogicError):
    """Raised when a precondition law check fails inside an operation."""

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class CarrierMismatch(CatLogicError):
    pass
