"""Tests para sistemas de pila: normalización, saturación y gramáticas."""

import random

import pytest

from parapush.automata.cfg import cfg_member, cfg_to_cnf
from parapush.core.errors import InputError, ResourceLimitError
from parapush.core.symbols import SymbolTable
from parapush.pushdown.convert import normalize_napds, pds_normalize, pds_to_cfg
from parapush.pushdown.model import (
    BOTTOM,
    INTERNAL,
    Action,
    NaPds,
    NaRule,
    Pds,
    PdsRule,
    replay_trace,
)
from parapush.pushdown.saturation import pds_control_reachable

from .builders import (
    bfs_accepted_words,
    bfs_reachable_controls,
    load,
    one_variable,
    random_labeled_pds,
    random_pds,
    words,
)


def _counter_pds() -> Pds:
    """p apila A por cada a; q desapila una A por cada b; q es final."""
    outputs = SymbolTable(["a", "b"]).freeze()
    stack = SymbolTable([BOTTOM, "A"]).freeze()
    controls = SymbolTable(["p", "q"]).freeze()
    rules = (
        PdsRule(0, 0, 0, 0, 0, (1, 0)),
        PdsRule(1, 0, 1, 0, 0, (1, 1)),
        PdsRule(2, 0, 1, 1, 1, ()),
        PdsRule(3, 1, 1, 1, 1, ()),
    )
    return Pds(controls, stack, outputs, frozenset({0, 1}), rules, 0, frozenset({1}))


class TestModel:
    """Tests del modelo naPDS."""

    def test_bottom_cannot_be_popped(self) -> None:
        """Una regla que desapila $ es inválida."""
        var = one_variable(["0", "1"])
        with pytest.raises(InputError):
            NaPds(
                "slave",
                SymbolTable(["s0"]).freeze(),
                SymbolTable([BOTTOM]).freeze(),
                (var,),
                (NaRule(0, 0, 0, INTERNAL, 0, ()),),
                0,
            )

    def test_value_out_of_range(self) -> None:
        """Una acción con un valor fuera del alfabeto es inválida."""
        var = one_variable(["0", "1"])
        with pytest.raises(InputError):
            NaPds(
                "slave",
                SymbolTable(["s0"]).freeze(),
                SymbolTable([BOTTOM]).freeze(),
                (var,),
                (NaRule(0, 0, 0, Action.write(0, 5), 0, (0,)),),
                0,
            )

    def test_describe_rule(self) -> None:
        """La descripción usa los nombres externos."""
        inst = load("stack-count.napds")
        assert inst.master.describe_rule(inst.master.rule(0)) == "m0 $ -> m1 M $ read g=tick"
        assert inst.slave.describe_rule(inst.slave.rule(2)) == "s0 A -> s1 A"

    def test_unknown_rule_id(self) -> None:
        """Pedir una regla inexistente es error de entrada."""
        inst = load("relay.napds")
        with pytest.raises(InputError):
            inst.slave.rule(99)


class TestNormalize:
    """Tests de la partición de pushes largos."""

    def test_long_push_becomes_chain(self) -> None:
        """Un push de 3 símbolos se parte en dos reglas encadenadas."""
        slave = load("stack-count.napds").slave
        norm = normalize_napds(slave)
        assert all(len(r.push) <= 2 for r in norm.rules)
        chain = [r for r in norm.rules if r.original == 1]
        assert len(chain) == 2
        assert chain[0].head and not chain[1].head
        assert chain[0].action == slave.rule(1).action
        assert chain[1].action.is_internal
        # las reglas 0 y 1 apilan tres símbolos
        assert len(norm.controls) == len(slave.controls) + 2

    def test_normalized_pds_keeps_language(self) -> None:
        """Normalizar no cambia el lenguaje del PDS."""
        outputs = SymbolTable(["a"]).freeze()
        stack = SymbolTable([BOTTOM, "X"]).freeze()
        controls = SymbolTable(["p", "q"]).freeze()
        rules = (
            PdsRule(0, 0, 0, 0, 0, (1, 1, 1, 0)),
            PdsRule(1, 0, 1, None, 1, ()),
            PdsRule(2, 1, 1, 0, 1, ()),
        )
        pds = Pds(controls, stack, outputs, frozenset({0}), rules, 0, frozenset({1}))
        norm = pds_normalize(pds)
        assert norm.is_normalized()
        left = cfg_to_cnf(pds_to_cfg(norm))
        for n in range(6):
            assert cfg_member(left, [0] * n) == (1 <= n <= 3)

    def test_random_languages_survive_conversion(self) -> None:
        """Normalizar y pasar a gramática conserva las palabras aceptadas."""
        rng = random.Random(61)
        for _ in range(40):
            pds = random_labeled_pds(rng, rng.randint(3, 7))
            expected = bfs_accepted_words(pds, 5)
            g = cfg_to_cnf(pds_to_cfg(pds_normalize(pds)))
            for w in words([0, 1], 5):
                assert cfg_member(g, w) == (w in expected), (pds, w)


class TestPdsToCfg:
    """Tests de la gramática de tripletas."""

    def test_counter_language(self) -> None:
        """L = { a^n b^m : 1 ≤ m ≤ n }."""
        g = cfg_to_cnf(pds_to_cfg(_counter_pds()))
        for w in words([0, 1], 6):
            n = 0
            while n < len(w) and w[n] == 0:
                n += 1
            m = len(w) - n
            expected = all(s == 1 for s in w[n:]) and 1 <= m <= n
            assert cfg_member(g, w) == expected, w


class TestSaturation:
    """Tests de alcanzabilidad por saturación."""

    def test_counter_reaches_final(self) -> None:
        """El testigo se reproduce hasta el control buscado."""
        pds = _counter_pds()
        result = pds_control_reachable(pds, {1})
        assert result.reachable
        end = replay_trace(pds, result.trace)
        assert end is not None and end.control == 1
        assert result.rule_ids[-1] in (2, 3)

    def test_initial_target(self) -> None:
        """El control inicial ya es objetivo: testigo vacío."""
        result = pds_control_reachable(_counter_pds(), {0})
        assert result.reachable and result.trace == []

    def test_random_against_bounded_search(self) -> None:
        """La saturación coincide con la búsqueda acotada."""
        rng = random.Random(23)
        for _ in range(200):
            controls = rng.randint(2, 4)
            pds = random_pds(rng, controls, rng.randint(3, 8))
            seen, truncated = bfs_reachable_controls(pds, stack_bound=8)
            for target in range(controls):
                result = pds_control_reachable(pds, {target})
                if target in seen:
                    assert result.reachable
                elif not truncated:
                    assert not result.reachable
                if result.reachable:
                    end = replay_trace(pds, result.trace)
                    assert end is not None and end.control == target

    def test_cap(self) -> None:
        """El límite de transiciones se reporta."""
        with pytest.raises(ResourceLimitError) as info:
            pds_control_reachable(_counter_pds(), {5}, max_transitions=1)
        assert info.value.limit == "max_saturation"
