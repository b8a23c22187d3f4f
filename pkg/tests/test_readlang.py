"""Tests para lenguajes de lectura."""

import random
from itertools import combinations

import pytest

from parapush.automata.cfg import cfg_member, cfg_to_cnf
from parapush.automata.grammar_text import parse_grammar
from parapush.automata.nfa import (
    empty_nfa,
    nfa_accepts,
    nfa_equivalent,
    nfa_is_empty,
    subsequence_nfa,
    universal_nfa,
)
from parapush.config import Config
from parapush.core.errors import InputError, ResourceLimitError
from parapush.core.symbols import SymbolTable
from parapush.param.check import build_read_languages
from parapush.param.instance import ParamInstance
from parapush.pushdown.model import BOTTOM, Action, NaPds, NaRule
from parapush.readlang.alphabet import ReadAlphabet
from parapush.readlang.closure import (
    closure_member,
    is_subword,
    minimal_read_words,
    read_language_nfa,
    read_language_nfa_er,
    upward_closure_grammar,
    words_nfa,
)
from parapush.readlang.write_pds import FINAL_CONTROL, build_write_pds

from .builders import load, one_variable, random_napds, words


@pytest.fixture
def relay() -> ParamInstance:
    return load("relay.napds")


def _value(inst: ParamInstance, name: str) -> tuple[int, int]:
    return 0, inst.variables[0].value_id(name)


def _single_write() -> NaPds:
    """Esclavo que solo escribe g=1."""
    var = one_variable(["0", "1"])
    return NaPds(
        "slave",
        SymbolTable(["s0", "s1"]).freeze(),
        SymbolTable([BOTTOM]).freeze(),
        (var,),
        (NaRule(0, 0, 0, Action.write(0, 1), 1, (0,)),),
        0,
    )


class TestReadAlphabet:
    """Tests del alfabeto de lectura."""

    def test_names_and_decode(self) -> None:
        """Un símbolo por valor y un KILL por variable."""
        inst = load("two-vars.napds")
        alphabet = ReadAlphabet.from_variables(inst.variables)
        assert list(alphabet.symbols) == [
            "r(x=0)",
            "r(x=a)",
            "r(y=0)",
            "r(y=b)",
            "KILL_x",
            "KILL_y",
        ]
        assert alphabet.decode(alphabet.read(1, 1)) == ("read", 1, 1)
        assert alphabet.decode(alphabet.kill(0)) == ("kill", 0, -1)
        assert alphabet.encode(["KILL_y", "r(x=a)"]) == [5, 1]

    def test_decode_unknown(self) -> None:
        """Un id ajeno al alfabeto es error de entrada."""
        alphabet = ReadAlphabet.from_variables(load("relay.napds").variables)
        with pytest.raises(InputError):
            alphabet.decode(99)


class TestWritePds:
    """Tests del PDS de escritura."""

    def test_write_goes_to_final(self, relay: ParamInstance) -> None:
        """La escritura del valor agrega una regla ε hacia el control final."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        pds = build_write_pds(relay.slave, *_value(relay, "go"), alphabet)
        final = pds.controls.lookup(FINAL_CONTROL)
        assert pds.finals == frozenset({final})
        into_final = [r for r in pds.rules if r.target == final]
        assert len(into_final) == 1
        assert into_final[0].label is None
        assert into_final[0].origin == 2

    def test_writes_become_kills(self, relay: ParamInstance) -> None:
        """Las demás escrituras emiten KILL de su variable."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        pds = build_write_pds(relay.slave, *_value(relay, "go"), alphabet)
        final = pds.controls.lookup(FINAL_CONTROL)
        labels = {r.origin: r.label for r in pds.rules if r.target != final}
        assert labels[0] == alphabet.kill(0)
        assert labels[1] == alphabet.read(*_value(relay, "ok"))

    def test_unknown_value(self, relay: ParamInstance) -> None:
        """Un valor inexistente es error de entrada."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        with pytest.raises(InputError):
            build_write_pds(relay.slave, 0, 42, alphabet)


class TestClosure:
    """Tests de la clausura superior."""

    def test_is_subword(self) -> None:
        """Subpalabra dispersa."""
        assert is_subword((1, 3), (1, 2, 3))
        assert not is_subword((3, 1), (1, 2, 3))
        assert is_subword((), ())

    def test_minimal_words_anbn(self) -> None:
        """La única palabra minimal de a^n b^n es ab."""
        g = cfg_to_cnf(parse_grammar("S -> a S b\nS -> a b"))
        a, b = g.terminals.lookup("a"), g.terminals.lookup("b")
        assert minimal_read_words(g) == [(a, b)]

    def test_minimal_words_nullable(self) -> None:
        """Si ε pertenece, la anticadena es {ε}."""
        g = cfg_to_cnf(parse_grammar("S -> eps\nS -> a"))
        assert minimal_read_words(g) == [()]

    def test_minimal_words_cap(self) -> None:
        """El límite de la anticadena se reporta."""
        g = cfg_to_cnf(parse_grammar("S -> X X\nX -> a\nX -> b\nX -> c"))
        with pytest.raises(ResourceLimitError) as info:
            minimal_read_words(g, max_antichain=2)
        assert info.value.limit == "max_antichain"

    def test_memo_cap_is_separate(self) -> None:
        """Los subproblemas memoizados tienen su propio límite."""
        g = cfg_to_cnf(parse_grammar("S -> A B\nB -> A C\nC -> A D\nD -> a\nA -> a"))
        a = g.terminals.lookup("a")
        assert minimal_read_words(g, max_antichain=1) == [(a, a, a, a)]
        with pytest.raises(ResourceLimitError) as info:
            minimal_read_words(g, max_antichain=100, max_memo=1)
        assert info.value.limit == "max_read_memo"

    def test_closure_member_matches_antichain(self) -> None:
        """closure_member coincide con el autómata de la anticadena."""
        rng = random.Random(13)
        terminals = SymbolTable(["a", "b"])
        for text in ("S -> a S b\nS -> a b", "S -> X S\nS -> b\nX -> a\nX -> b"):
            g = cfg_to_cnf(parse_grammar(text, terminals))
            minimal = minimal_read_words(g)
            for _ in range(60):
                w = tuple(rng.choice([0, 1]) for _ in range(rng.randint(0, 6)))
                expected = any(is_subword(u, w) for u in minimal)
                assert closure_member(g, w) == expected

    def test_upward_closure_grammar(self) -> None:
        """La gramática de la clausura genera las superpalabras de ab."""
        g = cfg_to_cnf(parse_grammar("S -> a S b\nS -> a b"))
        up = upward_closure_grammar(g, g.alphabet)
        for w in words(sorted(g.alphabet), 5):
            assert cfg_member(up, w) == closure_member(g, w)


class TestReadLanguages:
    """Tests de L_w(g) sobre instancias."""

    def test_relay_languages(self, relay: ParamInstance) -> None:
        """Cada valor tiene el lenguaje esperado."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        langs = build_read_languages(relay, "closure", Config(), alphabet)
        symbols, letters = alphabet.symbols, alphabet.alphabet
        kill = alphabet.kill(0)

        def read(name: str) -> int:
            return alphabet.read(*_value(relay, name))

        expected = {
            "0": empty_nfa(symbols, letters),
            "1": universal_nfa(symbols, letters),
            "2": universal_nfa(symbols, letters),
            "ok": empty_nfa(symbols, letters),
            "go": subsequence_nfa([kill, read("ok")], symbols, letters),
            "f": subsequence_nfa([kill, read("go")], symbols, letters),
        }
        for name, nfa in expected.items():
            lang = langs[_value(relay, name)]
            assert lang.label(alphabet) == f"g={name}"
            assert nfa_equivalent(lang.nfa, nfa), name

    def test_relay_minimal_words(self, relay: ParamInstance) -> None:
        """La anticadena de g=go es {KILL_g r(g=ok)}."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        lang = read_language_nfa(relay.slave, *_value(relay, "go"), alphabet, Config())
        assert lang.engine == "closure"
        assert lang.words == (tuple(alphabet.encode(["KILL_g", "r(g=ok)"])),)

    def test_words_nfa_empty(self, relay: ParamInstance) -> None:
        """Sin palabras el autómata es vacío."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        assert nfa_is_empty(words_nfa([], alphabet))

    def test_engines_agree_on_trivial_languages(self) -> None:
        """Ambos motores dan R* y ∅ para un esclavo que solo escribe."""
        slave = _single_write()
        alphabet = ReadAlphabet.from_variables(slave.variables)
        for value in (0, 1):
            closure = read_language_nfa(slave, 0, value, alphabet, Config())
            er = read_language_nfa_er(slave, 0, value, alphabet, Config())
            assert er.engine == "er" and er.words is None
            assert nfa_equivalent(closure.nfa, er.nfa)
        full = read_language_nfa_er(slave, 0, 1, alphabet, Config())
        assert nfa_accepts(full.nfa, [])
        assert nfa_accepts(full.nfa, alphabet.encode(["KILL_g", "r(g=1)"]))

    def test_selected_pairs(self, relay: ParamInstance) -> None:
        """Con `pairs` solo se construyen los pedidos."""
        langs = build_read_languages(relay, "closure", Config(), pairs=[_value(relay, "f")])
        assert list(langs) == [_value(relay, "f")]

    def test_unknown_engine(self, relay: ParamInstance) -> None:
        """Un motor desconocido es error de entrada."""
        with pytest.raises(InputError):
            build_read_languages(relay, "magic", Config())


def _subsequences(word: tuple[int, ...]) -> set[tuple[int, ...]]:
    return {
        tuple(word[i] for i in chosen)
        for size in range(1, len(word) + 1)
        for chosen in combinations(range(len(word)), size)
    }


def _random_slaves(rng: random.Random, count: int) -> list[NaPds]:
    slaves = []
    for _ in range(count):
        variables = tuple(
            one_variable([str(v) for v in range(rng.randint(2, 3))], name=f"g{i}")
            for i in range(rng.randint(1, 2))
        )
        slaves.append(random_napds(rng, "slave", variables, 3, rng.randint(2, 6)))
    return slaves


class TestRandomWriteCorpus:
    """Tests de L_w(g) sobre esclavos aleatorios."""

    def test_membership_matches_grammar(self) -> None:
        """El autómata acepta w sii alguna subpalabra de w está en L(P_w(g))."""
        rng = random.Random(31)
        for slave in _random_slaves(rng, 30):
            alphabet = ReadAlphabet.from_variables(slave.variables)
            letters = sorted(alphabet.alphabet)
            for var, variable in enumerate(slave.variables):
                for value in variable.values.ids():
                    lang = read_language_nfa(slave, var, value, alphabet, Config())
                    g = lang.grammar
                    for _ in range(15):
                        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 5)))
                        expected = g.start_nullable or any(
                            cfg_member(g, u) for u in _subsequences(w)
                        )
                        assert nfa_accepts(lang.nfa, w) == expected, (slave, var, value, w)
                        assert closure_member(g, w) == expected

    def test_insertion_keeps_words(self) -> None:
        """Insertar símbolos en una palabra aceptada la deja aceptada."""
        rng = random.Random(37)
        for slave in _random_slaves(rng, 20):
            alphabet = ReadAlphabet.from_variables(slave.variables)
            letters = sorted(alphabet.alphabet)
            for var, variable in enumerate(slave.variables):
                for value in variable.values.ids():
                    lang = read_language_nfa(slave, var, value, alphabet, Config())
                    assert lang.words is not None
                    for word in lang.words:
                        grown = list(word)
                        for _ in range(rng.randint(1, 4)):
                            grown.insert(rng.randint(0, len(grown)), rng.choice(letters))
                        assert nfa_accepts(lang.nfa, word)
                        assert nfa_accepts(lang.nfa, grown)

    def test_antichain_is_minimal(self) -> None:
        """Ninguna palabra minimal es subpalabra de otra."""
        rng = random.Random(41)
        for slave in _random_slaves(rng, 30):
            alphabet = ReadAlphabet.from_variables(slave.variables)
            for var, variable in enumerate(slave.variables):
                for value in variable.values.ids():
                    words_ = read_language_nfa(slave, var, value, alphabet, Config()).words
                    assert words_ is not None
                    assert len(set(words_)) == len(words_)
                    for u in words_:
                        for v in words_:
                            assert u == v or not is_subword(u, v)


class TestEngines:
    """Tests de los dos motores sobre relay."""

    def test_er_matches_closure_on_relay(self, relay: ParamInstance) -> None:
        """Ambos motores dan el mismo autómata para cada valor de g."""
        alphabet = ReadAlphabet.from_variables(relay.variables)
        config = Config()
        for value in relay.variables[0].values.ids():
            closure = read_language_nfa(relay.slave, 0, value, alphabet, config)
            er = read_language_nfa_er(relay.slave, 0, value, alphabet, config)
            assert nfa_equivalent(closure.nfa, er.nfa), relay.variables[0].values.name(value)
