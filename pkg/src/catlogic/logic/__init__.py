"""Propositional logic: syntax, Heyting-valued semantics and Hilbert proofs."""

from .hilbert import (
    IL_SCHEMAS,
    MP,
    SCHEMAS,
    Axiom,
    Proof,
    Reason,
    Rejection,
    System,
    check_proof,
    format_proof,
    instantiate,
    match_schema,
    parse_proof,
)
from .semantics import (
    DEFAULT_BUDGET,
    Countermodel,
    Valuation,
    check_validity,
    eval_formula,
    is_valid,
)
from .syntax import (
    And,
    Formula,
    Imp,
    Neg,
    Or,
    Var,
    depth,
    format_formula,
    parse_formula,
    substitute,
    variables,
)
