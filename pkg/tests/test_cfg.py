"""Tests para gramáticas libres de contexto."""

import random

import pytest

from parapush.automata.cfg import cfg_is_empty, cfg_member, cfg_to_cnf
from parapush.automata.grammar_text import format_grammar, parse_grammar
from parapush.core.errors import ContractError, InputError
from parapush.core.symbols import SymbolTable

from .builders import INSTANCES, derivable_words, random_grammar, words


def _ids(g, text: str) -> list[int]:
    return [g.terminals.lookup(c) for c in text]


class TestGrammarText:
    """Tests del formato de texto de gramáticas."""

    def test_first_head_is_start(self) -> None:
        """La primera cabeza es el símbolo inicial."""
        g = parse_grammar("S -> A b\nA -> a")
        assert g.nonterminals.name(g.start) == "S"
        assert g.terminals.names(sorted(g.alphabet)) == ["b", "a"]

    def test_eps_must_be_alone(self) -> None:
        """`eps` debe ser el cuerpo completo."""
        with pytest.raises(InputError) as info:
            parse_grammar("S -> a\nS -> eps a")
        assert info.value.line == 2

    def test_missing_arrow(self) -> None:
        """Una línea sin flecha se reporta con su número."""
        with pytest.raises(InputError) as info:
            parse_grammar("# comentario\nS a b")
        assert info.value.line == 2

    def test_empty_grammar(self) -> None:
        """Un texto sin producciones es inválido."""
        with pytest.raises(InputError):
            parse_grammar("# nada\n")

    def test_format_parses_back(self) -> None:
        """Imprimir y volver a leer conserva el lenguaje."""
        g = parse_grammar((INSTANCES / "grammars" / "anbn.cfg").read_text(encoding="utf-8"))
        again = parse_grammar(format_grammar(g), g.terminals)
        left, right = cfg_to_cnf(g), cfg_to_cnf(again)
        for w in words(sorted(g.alphabet), 6):
            assert cfg_member(left, w) == cfg_member(right, w)


class TestCnf:
    """Tests de la forma normal de Chomsky y CYK."""

    def test_anbn(self) -> None:
        """a^n b^n con n ≥ 1."""
        g = cfg_to_cnf(parse_grammar("S -> a S b\nS -> a b"))
        assert g.cnf
        assert cfg_member(g, _ids(g, "ab"))
        assert cfg_member(g, _ids(g, "aaabbb"))
        assert not cfg_member(g, _ids(g, "aab"))
        assert not cfg_member(g, [])

    def test_nullable_start(self) -> None:
        """ε queda registrada como start_nullable."""
        g = cfg_to_cnf(parse_grammar("S -> eps\nS -> A S\nS -> a\nA -> a"))
        assert g.start_nullable
        assert cfg_member(g, [])
        assert cfg_member(g, _ids(g, "aaa"))

    def test_nullable_inner_symbol(self) -> None:
        """Las variantes sin el símbolo anulable se conservan."""
        g = cfg_to_cnf(parse_grammar("S -> a T a\nT -> eps\nT -> b T"))
        assert not g.start_nullable
        assert cfg_member(g, _ids(g, "aa"))
        assert cfg_member(g, _ids(g, "abba"))
        assert not cfg_member(g, _ids(g, "abaa"))

    def test_unproductive_grammar_is_empty(self) -> None:
        """Una gramática sin derivaciones terminales es vacía."""
        g = parse_grammar("S -> S a")
        assert cfg_is_empty(g)
        assert cfg_is_empty(cfg_to_cnf(g))

    def test_cyk_requires_cnf(self) -> None:
        """CYK sobre una gramática sin normalizar es un error de contrato."""
        g = parse_grammar("S -> a")
        with pytest.raises(ContractError):
            cfg_member(g, [0])

    def test_random_grammars_against_derivations(self) -> None:
        """CNF + CYK coincide con la enumeración de derivaciones."""
        rng = random.Random(17)
        for _ in range(40):
            terminals = SymbolTable(["a", "b"])
            g = random_grammar(rng, terminals)
            cnf = cfg_to_cnf(g)
            expected = derivable_words(g, 4)
            for w in words([0, 1], 4):
                assert cfg_member(cnf, w) == (w in expected), (g, w)


class TestSymbolTable:
    """Tests de la tabla de símbolos."""

    def test_unfrozen_is_unhashable(self) -> None:
        """Una tabla abierta no se puede usar como clave."""
        table = SymbolTable(["a"])
        with pytest.raises(TypeError):
            hash(table)
        table.intern("b")
        assert table == SymbolTable(["a", "b"])

    def test_frozen_hash_follows_equality(self) -> None:
        """Tablas congeladas iguales tienen el mismo hash."""
        left = SymbolTable(["a", "b"]).freeze()
        right = SymbolTable(["a", "b"]).freeze()
        assert left == right
        assert len({left, right}) == 1
        with pytest.raises(ContractError):
            left.intern("c")
