"""Autómatas finitos sobre símbolos internados."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..core.errors import ContractError, InputError, ResourceLimitError
from ..core.symbols import SymbolTable

logger = logging.getLogger(__name__)

Transition = tuple[int, int, int]
_Pair = tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class Nfa:
    """Autómata finito no determinista sin transiciones ε.

    Los estados son ids densos `0..num_states-1`; las etiquetas son ids de
    `symbols` restringidos a `alphabet`.
    """

    symbols: SymbolTable
    alphabet: frozenset[int]
    num_states: int
    transitions: frozenset[Transition]
    initial: int
    finals: frozenset[int]
    _delta: dict[tuple[int, int], frozenset[int]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if not 0 <= self.initial < self.num_states:
            raise ContractError(f"initial state {self.initial} not declared")
        for q in self.finals:
            if not 0 <= q < self.num_states:
                raise ContractError(f"final state {q} not declared")
        delta: dict[tuple[int, int], set[int]] = {}
        for src, sym, dst in self.transitions:
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise ContractError(f"transition ({src}, {sym}, {dst}) uses undeclared state")
            if sym not in self.alphabet:
                raise ContractError(f"transition label {sym} not in alphabet")
            delta.setdefault((src, sym), set()).add(dst)
        object.__setattr__(self, "_delta", {k: frozenset(v) for k, v in delta.items()})

    def successors(self, state: int, symbol: int) -> frozenset[int]:
        """Estados alcanzables desde `state` leyendo `symbol`."""
        return self._delta.get((state, symbol), frozenset())

    def step(self, states: Iterable[int], symbol: int) -> frozenset[int]:
        """Imagen de un conjunto de estados por `symbol`."""
        out: set[int] = set()
        for q in states:
            out |= self._delta.get((q, symbol), frozenset())
        return frozenset(out)

    def alphabet_names(self) -> set[str]:
        return {self.symbols.name(s) for s in self.alphabet}

    def is_deterministic(self) -> bool:
        """Cada par (estado, símbolo) tiene a lo sumo un sucesor."""
        return all(len(v) <= 1 for v in self._delta.values())

    def encode(self, names: Sequence[str]) -> list[int]:
        """Traducir nombres externos a ids del alfabeto."""
        out = []
        for name in names:
            ident = self.symbols.get(name)
            if ident is None or ident not in self.alphabet:
                raise InputError(f"symbol {name!r} not in automaton alphabet")
            out.append(ident)
        return out

    def __getstate__(self) -> dict[str, object]:
        state = dict(self.__dict__)
        state.pop("_delta", None)
        return state

    def __setstate__(self, state: dict[str, object]) -> None:
        for key, value in state.items():
            object.__setattr__(self, key, value)
        self.__post_init__()


class NfaBuilder:
    """Constructor mutable que admite transiciones ε."""

    def __init__(self, symbols: SymbolTable, alphabet: Iterable[int]) -> None:
        self.symbols = symbols
        self.alphabet = frozenset(alphabet)
        self.num_states = 0
        self.initial = 0
        self.finals: set[int] = set()
        self._edges: set[Transition] = set()
        self._eps: dict[int, set[int]] = {}

    def new_state(self, *, final: bool = False) -> int:
        q = self.num_states
        self.num_states += 1
        if final:
            self.finals.add(q)
        return q

    def add(self, src: int, symbol: int, dst: int) -> None:
        if symbol not in self.alphabet:
            raise ContractError(f"symbol {symbol} not in builder alphabet")
        self._edges.add((src, symbol, dst))

    def add_eps(self, src: int, dst: int) -> None:
        self._eps.setdefault(src, set()).add(dst)

    def add_loop_all(self, state: int) -> None:
        """Bucle sobre todo el alfabeto."""
        for a in self.alphabet:
            self._edges.add((state, a, state))

    def _closure(self, q: int) -> set[int]:
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for r in self._eps.get(p, ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    def build(self) -> Nfa:
        """Publicar el autómata eliminando ε por clausura."""
        if self.num_states == 0:
            self.new_state()
        if not self._eps:
            return Nfa(
                self.symbols,
                self.alphabet,
                self.num_states,
                frozenset(self._edges),
                self.initial,
                frozenset(self.finals),
            )
        out_edges: dict[int, list[tuple[int, int]]] = {}
        for src, sym, dst in self._edges:
            out_edges.setdefault(src, []).append((sym, dst))
        transitions: set[Transition] = set()
        finals: set[int] = set()
        for q in range(self.num_states):
            closure = self._closure(q)
            if closure & self.finals:
                finals.add(q)
            for p in closure:
                for sym, dst in out_edges.get(p, ()):
                    transitions.add((q, sym, dst))
        return Nfa(
            self.symbols,
            self.alphabet,
            self.num_states,
            frozenset(transitions),
            self.initial,
            frozenset(finals),
        )


def _max_states(max_states: int | None) -> int:
    if max_states is not None:
        return max_states
    from ..config import get_config

    return get_config().max_det_states


def nfa_accepts(nfa: Nfa, word: Sequence[int]) -> bool:
    """Simulación hacia adelante por subconjuntos."""
    current = frozenset([nfa.initial])
    for sym in word:
        if sym not in nfa.alphabet:
            name = nfa.symbols.name(sym) if 0 <= sym < len(nfa.symbols) else str(sym)
            raise InputError(f"symbol {name!r} not in automaton alphabet")
        current = nfa.step(current, sym)
        if not current:
            return False
    return bool(current & nfa.finals)


def nfa_is_empty(nfa: Nfa) -> bool:
    """Ningún estado final es alcanzable desde el inicial."""
    if not nfa.finals:
        return True
    seen = {nfa.initial}
    queue = deque([nfa.initial])
    adjacency: dict[int, set[int]] = {}
    for src, _, dst in nfa.transitions:
        adjacency.setdefault(src, set()).add(dst)
    while queue:
        q = queue.popleft()
        if q in nfa.finals:
            return False
        for r in adjacency.get(q, ()):
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return True


def determinize(nfa: Nfa, max_states: int | None = None) -> Nfa:
    """Construcción de subconjuntos (autómata determinista parcial)."""
    cap = _max_states(max_states)
    start = frozenset([nfa.initial])
    index = {start: 0}
    order = [start]
    transitions: set[Transition] = set()
    queue = deque([start])
    symbols = sorted(nfa.alphabet)
    while queue:
        subset = queue.popleft()
        src = index[subset]
        for sym in symbols:
            target = nfa.step(subset, sym)
            if not target:
                continue
            dst = index.get(target)
            if dst is None:
                if len(order) >= cap:
                    raise ResourceLimitError("max_det_states", cap, "determinization")
                dst = len(order)
                index[target] = dst
                order.append(target)
                queue.append(target)
            transitions.add((src, sym, dst))
    finals = frozenset(i for i, subset in enumerate(order) if subset & nfa.finals)
    logger.debug("Determinización: %d -> %d estados", nfa.num_states, len(order))
    return Nfa(nfa.symbols, nfa.alphabet, len(order), frozenset(transitions), 0, finals)


def relabel(nfa: Nfa, symbols: SymbolTable) -> Nfa:
    """Reescribir las etiquetas de `nfa` con los ids de otra tabla."""
    if nfa.symbols is symbols or nfa.symbols == symbols:
        return nfa
    mapping = {}
    for sym in nfa.alphabet:
        ident = symbols.get(nfa.symbols.name(sym))
        if ident is None:
            raise ContractError(f"symbol {nfa.symbols.name(sym)!r} missing from target table")
        mapping[sym] = ident
    return Nfa(
        symbols,
        frozenset(mapping.values()),
        nfa.num_states,
        frozenset((s, mapping[a], d) for s, a, d in nfa.transitions),
        nfa.initial,
        nfa.finals,
    )


def find_difference(a: Nfa, b: Nfa, max_states: int | None = None) -> list[int] | None:
    """Palabra más corta aceptada por exactamente uno de los dos autómatas.

    Explora el producto de ambas determinizaciones sobre la marcha; devuelve
    None si los lenguajes coinciden.
    """
    if a.alphabet_names() != b.alphabet_names():
        raise ContractError("automata have different alphabets")
    b = relabel(b, a.symbols)
    cap = _max_states(max_states)
    start: _Pair = (frozenset([a.initial]), frozenset([b.initial]))
    parent: dict[_Pair, tuple[_Pair, int] | None] = {start: None}
    queue = deque([start])
    symbols = sorted(a.alphabet)
    while queue:
        pair = queue.popleft()
        left, right = pair
        if bool(left & a.finals) != bool(right & b.finals):
            word: list[int] = []
            link = parent[pair]
            while link is not None:
                prev, sym = link
                word.append(sym)
                link = parent[prev]
            word.reverse()
            return word
        for sym in symbols:
            nxt = (a.step(left, sym), b.step(right, sym))
            if nxt in parent:
                continue
            if len(parent) >= cap:
                raise ResourceLimitError("max_det_states", cap, "equivalence check")
            parent[nxt] = (pair, sym)
            queue.append(nxt)
    return None


def nfa_equivalent(a: Nfa, b: Nfa, max_states: int | None = None) -> bool:
    """L(a) = L(b)."""
    return find_difference(a, b, max_states) is None


def universal_nfa(symbols: SymbolTable, alphabet: Iterable[int]) -> Nfa:
    """Autómata de un estado para Σ*."""
    builder = NfaBuilder(symbols, alphabet)
    q = builder.new_state(final=True)
    builder.add_loop_all(q)
    return builder.build()


def empty_nfa(symbols: SymbolTable, alphabet: Iterable[int]) -> Nfa:
    """Autómata del lenguaje vacío."""
    builder = NfaBuilder(symbols, alphabet)
    builder.new_state()
    return builder.build()


def subsequence_nfa(word: Sequence[int], symbols: SymbolTable, alphabet: Iterable[int]) -> Nfa:
    """R* a1 R* a2 ... ak R*: las superpalabras dispersas de `word`."""
    builder = NfaBuilder(symbols, alphabet)
    states = [builder.new_state() for _ in range(len(word) + 1)]
    for q in states:
        builder.add_loop_all(q)
    for i, sym in enumerate(word):
        builder.add(states[i], sym, states[i + 1])
    builder.finals.add(states[-1])
    return builder.build()


def union_nfa(nfas: Sequence[Nfa], symbols: SymbolTable, alphabet: Iterable[int]) -> Nfa:
    """Unión disjunta con un estado inicial nuevo."""
    builder = NfaBuilder(symbols, alphabet)
    initial = builder.new_state()
    for nfa in nfas:
        if nfa.alphabet != builder.alphabet:
            raise ContractError("union of automata over different alphabets")
        offset = builder.num_states
        for _ in range(nfa.num_states):
            builder.new_state()
        for src, sym, dst in nfa.transitions:
            builder.add(src + offset, sym, dst + offset)
        builder.finals.update(q + offset for q in nfa.finals)
        builder.add_eps(initial, nfa.initial + offset)
    return builder.build()
