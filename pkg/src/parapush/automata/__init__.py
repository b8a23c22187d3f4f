"""Autómatas finitos y gramáticas libres de contexto."""

from .cfg import (
    Cfg,
    GrammarBuilder,
    NonTerm,
    Production,
    Term,
    cfg_is_empty,
    cfg_member,
    cfg_to_cnf,
)
from .grammar_text import format_grammar, parse_grammar
from .nfa import (
    Nfa,
    NfaBuilder,
    determinize,
    empty_nfa,
    find_difference,
    nfa_accepts,
    nfa_equivalent,
    nfa_is_empty,
    subsequence_nfa,
    union_nfa,
    universal_nfa,
)

__all__ = [
    "Cfg",
    "GrammarBuilder",
    "Nfa",
    "NfaBuilder",
    "NonTerm",
    "Production",
    "Term",
    "cfg_is_empty",
    "cfg_member",
    "cfg_to_cnf",
    "determinize",
    "empty_nfa",
    "find_difference",
    "format_grammar",
    "nfa_accepts",
    "nfa_equivalent",
    "nfa_is_empty",
    "parse_grammar",
    "subsequence_nfa",
    "union_nfa",
    "universal_nfa",
]
