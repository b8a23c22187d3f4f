"""Regularización de Ehrenfeucht–Rozenberg por tipos de espina."""

from .construct import (
    ErConstruction,
    ErResult,
    SpineTypeOracle,
    er_nfa,
    fold_equivalent_states,
    spine_types_equal,
)
from .spine import (
    MarkedAlphabet,
    MarkedSymbol,
    MarkKind,
    SpineType,
    enumerate_types,
    marked_alphabet,
    spine_consistent_types,
    type_nfa,
)
from .typed_grammar import typed_grammar

__all__ = [
    "ErConstruction",
    "ErResult",
    "MarkKind",
    "MarkedAlphabet",
    "MarkedSymbol",
    "SpineType",
    "SpineTypeOracle",
    "enumerate_types",
    "er_nfa",
    "fold_equivalent_states",
    "marked_alphabet",
    "spine_consistent_types",
    "spine_types_equal",
    "type_nfa",
    "typed_grammar",
]
