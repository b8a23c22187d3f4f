"""Lenguajes de lectura de los esclavos."""

from .alphabet import ReadAlphabet, kill_name, read_name
from .closure import (
    ReadLanguage,
    closure_member,
    is_subword,
    minimal_read_words,
    read_language_nfa,
    read_language_nfa_er,
    upward_closure_grammar,
    words_nfa,
    write_grammar,
)
from .write_pds import build_write_pds

__all__ = [
    "ReadAlphabet",
    "ReadLanguage",
    "build_write_pds",
    "closure_member",
    "is_subword",
    "kill_name",
    "minimal_read_words",
    "read_language_nfa",
    "read_language_nfa_er",
    "read_name",
    "upward_closure_grammar",
    "words_nfa",
    "write_grammar",
]
