"""Lenguajes de lectura L_w(g) por clausura superior.

Bombear dentro de un lenguaje de lectura solo inserta símbolos, así que toda
palabra tiene una subpalabra dispersa derivada por un árbol sin no terminales
repetidos en un camino. El conjunto minimal de esas palabras determina
L_w(g) = R* a1 R* ... ak R*.
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..automata.cfg import Cfg, GrammarBuilder, NonTerm, Term, cfg_to_cnf
from ..automata.nfa import Nfa, empty_nfa, subsequence_nfa, union_nfa
from ..config import Config, get_config
from ..core.errors import ContractError, ResourceLimitError
from ..pushdown.convert import pds_normalize, pds_to_cfg
from ..pushdown.model import NaPds
from .alphabet import ReadAlphabet
from .write_pds import build_write_pds

logger = logging.getLogger(__name__)

Word = tuple[int, ...]


def is_subword(u: Sequence[int], w: Sequence[int]) -> bool:
    """`u` es subpalabra dispersa de `w`."""
    it = iter(w)
    return all(sym in it for sym in u)


def _insert(antichain: list[Word], word: Word) -> list[Word]:
    if any(is_subword(u, word) for u in antichain):
        return antichain
    kept = [v for v in antichain if not is_subword(word, v)]
    kept.append(word)
    return kept


def minimal_read_words(
    g: Cfg, max_antichain: int | None = None, max_memo: int | None = None
) -> list[Word]:
    """Anticadena de palabras minimales (orden de subpalabra) de L(g)↑.

    Recursión memoizada sobre (no terminal, prohibidos) con poda tras cada
    combinación; los prohibidos son los no terminales del camino actual.
    """
    if not g.cnf:
        raise ContractError("minimal_read_words requires a CNF grammar")
    if g.start_nullable:
        return [()]
    config = get_config()
    cap = max_antichain if max_antichain is not None else config.max_antichain
    memo_cap = max_memo if max_memo is not None else config.max_read_memo

    terms: dict[int, list[int]] = {}
    binary: dict[int, list[tuple[int, int]]] = {}
    for head, a in g.terminal_rules():
        terms.setdefault(head, []).append(a)
    for head, b, c in g.binary_rules():
        binary.setdefault(head, []).append((b, c))

    memo: dict[tuple[int, int], list[Word]] = {}

    def solve(nt: int, forbidden: int) -> list[Word]:
        key = (nt, forbidden)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= memo_cap:
            raise ResourceLimitError("max_read_memo", memo_cap, "memoized subproblems")
        inner = forbidden | (1 << nt)
        acc: list[Word] = []
        for a in terms.get(nt, ()):
            acc = _insert(acc, (a,))
        for b, c in binary.get(nt, ()):
            if (inner >> b) & 1 or (inner >> c) & 1:
                continue
            left = solve(b, inner)
            if not left:
                continue
            right = solve(c, inner)
            for u in left:
                for v in right:
                    acc = _insert(acc, u + v)
                    if len(acc) > cap:
                        raise ResourceLimitError("max_antichain", cap, "antichain size")
        memo[key] = acc
        return acc

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(g.nonterminals) + 1000))
    try:
        words = solve(g.start, 0)
    finally:
        sys.setrecursionlimit(limit)
    words.sort(key=lambda w: (len(w), w))
    logger.debug("Palabras minimales: %d (memo %d)", len(words), len(memo))
    return words


def closure_member(g: Cfg, word: Sequence[int]) -> bool:
    """¿Tiene `word` una subpalabra dispersa en L(g)?

    Programa dinámico sobre (no terminal, intervalo): `table[i][j]` es el
    bitset de no terminales que derivan alguna subpalabra de word[i:j].
    """
    if not g.cnf:
        raise ContractError("closure_member requires a CNF grammar")
    if g.start_nullable:
        return True
    n = len(word)
    if n == 0:
        return False
    unary = {}
    for head, a in g.terminal_rules():
        unary[a] = unary.get(a, 0) | (1 << head)
    binary = g.binary_rules()
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            if length == 1:
                mask = unary.get(word[i], 0)
            else:
                mask = table[i][j - 1] | table[i + 1][j]
                for k in range(i + 1, j):
                    left = table[i][k]
                    right = table[k][j]
                    if not left or not right:
                        continue
                    for head, b, c in binary:
                        if (left >> b) & 1 and (right >> c) & 1:
                            mask |= 1 << head
            table[i][j] = mask
    return bool((table[0][n] >> g.start) & 1)


def upward_closure_grammar(g: Cfg, alphabet: Iterable[int]) -> Cfg:
    """Gramática CNF de la clausura superior de L(g) sobre `alphabet`.

    Cada producción A → a deriva R* a R* a través de un único no terminal
    de "cualquier símbolo"; si ε ∈ L(g) el resultado es R*.
    """
    if not g.cnf:
        raise ContractError("upward_closure_grammar requires a CNF grammar")
    letters = sorted(set(alphabet))
    builder = GrammarBuilder(g.terminals, letters)
    for name in g.nonterminals:
        builder.nonterminal(name)
    start = builder.fresh("⟨S↑⟩")
    anything = builder.fresh("⟨R⟩")
    plus = builder.fresh("⟨R+⟩")
    for r in letters:
        builder.add(anything, [Term(r)])
    builder.add(plus, [anything])
    builder.add(plus, [anything, plus])

    lefts: dict[int, NonTerm] = {}
    for prod in g.productions:
        head = NonTerm(prod.head)
        if len(prod.body) == 2:
            builder.add(head, list(prod.body))
            continue
        a = prod.body[0]
        assert isinstance(a, Term)
        if a.id not in lefts:
            left = builder.fresh(f"⟨R*{g.terminals.name(a.id)}⟩")
            lefts[a.id] = left
            builder.add(left, [a])
            builder.add(left, [plus, a])
        builder.add(head, [a])
        builder.add(head, [plus, a])
        builder.add(head, [lefts[a.id], plus])

    builder.add(start, [NonTerm(g.start)])
    if g.start_nullable:
        builder.add(start, [])
        builder.add(start, [plus])
    return cfg_to_cnf(builder.build(start))


@dataclass(frozen=True)
class ReadLanguage:
    """L_w(g) de un valor g de una variable."""

    var: int
    value: int
    nfa: Nfa
    engine: str = "closure"
    words: tuple[Word, ...] | None = None
    grammar: Cfg | None = None

    def label(self, alphabet: ReadAlphabet) -> str:
        var = alphabet.variables[self.var]
        return f"{var.name}={var.values.name(self.value)}"


def write_grammar(slave: NaPds, var: int, value: int, alphabet: ReadAlphabet) -> Cfg:
    """Gramática CNF de L(P_w(g))."""
    return cfg_to_cnf(pds_to_cfg(pds_normalize(build_write_pds(slave, var, value, alphabet))))


def words_nfa(words: Sequence[Word], alphabet: ReadAlphabet) -> Nfa:
    """Unión de los autómatas R* a1 R* ... ak R*."""
    if not words:
        return empty_nfa(alphabet.symbols, alphabet.alphabet)
    parts = [subsequence_nfa(w, alphabet.symbols, alphabet.alphabet) for w in words]
    if len(parts) == 1:
        return parts[0]
    return union_nfa(parts, alphabet.symbols, alphabet.alphabet)


def read_language_nfa(
    slave: NaPds, var: int, value: int, alphabet: ReadAlphabet, config: Config | None = None
) -> ReadLanguage:
    """Motor por clausura superior (por defecto)."""
    config = config or get_config()
    grammar = write_grammar(slave, var, value, alphabet)
    words = minimal_read_words(grammar, config.max_antichain, config.max_read_memo)
    nfa = words_nfa(words, alphabet)
    logger.info(
        "L_w(%s=%s): %d palabras minimales, %d estados",
        alphabet.variables[var].name,
        alphabet.variables[var].values.name(value),
        len(words),
        nfa.num_states,
    )
    return ReadLanguage(var, value, nfa, "closure", tuple(words), grammar)


def read_language_nfa_er(
    slave: NaPds, var: int, value: int, alphabet: ReadAlphabet, config: Config | None = None
) -> ReadLanguage:
    """Motor Ehrenfeucht–Rozenberg sobre la gramática de la clausura."""
    from ..er.construct import er_nfa

    config = config or get_config()
    grammar = write_grammar(slave, var, value, alphabet)
    nfa = er_nfa(upward_closure_grammar(grammar, alphabet.alphabet), config)
    logger.info(
        "L_w(%s=%s) [er]: %d estados",
        alphabet.variables[var].name,
        alphabet.variables[var].values.name(value),
        nfa.num_states,
    )
    return ReadLanguage(var, value, nfa, "er", None, grammar)
