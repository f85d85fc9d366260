"""Finite categorical logic: cribles, Heyting semantics, Omega-sets and monads."""

__version__ = "0.1.0"
