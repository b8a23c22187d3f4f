"""Autómata por lista de trabajo sobre conjuntos de tipos de espina.

Cada estado tiene una palabra representante; el sucesor wa se fusiona con
el estado cuyo representante tiene el mismo T. El estado de ε queda aislado
(T(ε) = ∅ pero nunca es destino de una fusión); las palabras muertas
comparten un estado con T = ∅ y representante no vacío.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from ..automata.cfg import Cfg, cfg_member, cfg_to_cnf
from ..automata.nfa import Nfa
from ..config import Config, get_config
from ..core.errors import ContractError, PreconditionViolation, ResourceLimitError
from .spine import MarkedAlphabet, SpineType, marked_alphabet, spine_consistent_types
from .typed_grammar import typed_grammar

logger = logging.getLogger(__name__)

Word = tuple[int, ...]


class SpineTypeOracle:
    """T(w) como bitset sobre la lista de tipos consistentes.

    Las formas CNF de cada G^x se guardan durante toda la vida del oráculo.
    """

    def __init__(self, g: Cfg, config: Config | None = None) -> None:
        if not g.cnf:
            raise ContractError("spine types require a CNF grammar")
        config = config or get_config()
        self.grammar = g
        self.alphabet: MarkedAlphabet = marked_alphabet(g)
        self.types: list[SpineType] = spine_consistent_types(g, self.alphabet, config.max_types)
        self._typed: dict[int, Cfg] = {}
        self._memo: dict[Word, int] = {}

    def typed(self, index: int) -> Cfg:
        cached = self._typed.get(index)
        if cached is None:
            cached = cfg_to_cnf(typed_grammar(self.grammar, self.types[index], self.alphabet))
            self._typed[index] = cached
        return cached

    def spine_types(self, word: Sequence[int]) -> int:
        """Bitset de los tipos x con x ∈ T(word)."""
        key = tuple(word)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        bits = 0
        if key:
            for i in range(len(self.types)):
                if cfg_member(self.typed(i), key):
                    bits |= 1 << i
        self._memo[key] = bits
        return bits

    def describe(self, bits: int) -> list[str]:
        return [self.alphabet.render(x) for i, x in enumerate(self.types) if (bits >> i) & 1]


def spine_types_equal(
    g: Cfg,
    w: Sequence[int],
    w2: Sequence[int],
    config: Config | None = None,
    oracle: SpineTypeOracle | None = None,
) -> bool:
    """T(w) = T(w2)."""
    oracle = oracle or SpineTypeOracle(g, config)
    return oracle.spine_types(w) == oracle.spine_types(w2)


@dataclass(frozen=True)
class ErResult:
    """Resultado de la construcción.

    `worklist_nfa` es el autómata de la lista de trabajo antes de fusionar
    estados con el mismo residuo; `representatives` y `parents` se refieren
    a sus estados.
    """

    nfa: Nfa
    worklist_nfa: Nfa
    representatives: tuple[Word, ...]
    parents: tuple[int, ...]
    spine_sets: tuple[int, ...]
    types: int


class ErConstruction:
    """Lista de trabajo sobre palabras representantes."""

    def __init__(self, g: Cfg, config: Config | None = None) -> None:
        if not g.cnf:
            raise ContractError("er_nfa requires a CNF grammar")
        self.config = config or get_config()
        self.grammar = g
        self.oracle = SpineTypeOracle(g, self.config)

    def run(self) -> ErResult:
        g = self.grammar
        cap = self.config.max_er_states
        letters = sorted(g.alphabet)
        reps: list[Word] = [()]
        parents: list[int] = [-1]
        finals: list[bool] = [g.start_nullable]
        sets: list[int] = [0]
        by_set: dict[int, int] = {}
        transitions: set[tuple[int, int, int]] = set()
        queue = deque([0])

        while queue:
            q = queue.popleft()
            for a in letters:
                word = reps[q] + (a,)
                bits = self.oracle.spine_types(word)
                member = cfg_member(g, word)
                target = by_set.get(bits)
                if target is None:
                    if len(reps) >= cap:
                        raise ResourceLimitError("max_er_states", cap, "worklist states")
                    target = len(reps)
                    reps.append(word)
                    parents.append(q)
                    finals.append(member)
                    sets.append(bits)
                    by_set[bits] = target
                    queue.append(target)
                elif finals[target] != member:
                    raise PreconditionViolation(
                        f"words {self._show(word)} and {self._show(reps[target])} have the "
                        "same spine types but differ on membership; the language is not "
                        "very degenerate"
                    )
                transitions.add((q, a, target))

        worklist = Nfa(
            g.terminals,
            g.alphabet,
            len(reps),
            frozenset(transitions),
            0,
            frozenset(i for i, f in enumerate(finals) if f),
        )
        folded = fold_equivalent_states(worklist)
        logger.info(
            "ER: %d tipos, %d estados de trabajo, %d tras fusionar",
            len(self.oracle.types),
            worklist.num_states,
            folded.num_states,
        )
        return ErResult(
            folded, worklist, tuple(reps), tuple(parents), tuple(sets), len(self.oracle.types)
        )

    def _show(self, word: Word) -> str:
        return " ".join(self.grammar.terminals.name(a) for a in word) or "ε"


def fold_equivalent_states(dfa: Nfa) -> Nfa:
    """Fusionar estados con el mismo residuo (refinamiento de particiones).

    Requiere un autómata determinista; los estados sin sucesor para un
    símbolo se tratan como si fueran a un sumidero implícito.
    """
    if not dfa.is_deterministic():
        raise ContractError("state folding requires a deterministic automaton")
    letters = sorted(dfa.alphabet)
    delta = {(s, a): d for s, a, d in dfa.transitions}
    block = [1 if q in dfa.finals else 0 for q in range(dfa.num_states)]
    count = len(set(block))
    while True:
        signatures = [
            (block[q], tuple(block[delta[(q, a)]] if (q, a) in delta else -1 for a in letters))
            for q in range(dfa.num_states)
        ]
        numbering: dict[tuple[int, tuple[int, ...]], int] = {}
        block = [numbering.setdefault(sig, len(numbering)) for sig in signatures]
        if len(numbering) == count:
            break
        count = len(numbering)

    # renumerar en orden BFS desde el inicial
    order: dict[int, int] = {block[dfa.initial]: 0}
    witness: dict[int, int] = {block[dfa.initial]: dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for a in letters:
            d = delta.get((q, a))
            if d is not None and block[d] not in order:
                order[block[d]] = len(order)
                witness[block[d]] = d
                queue.append(d)
    transitions = set()
    for b, q in witness.items():
        for a in letters:
            d = delta.get((q, a))
            if d is not None:
                transitions.add((order[b], a, order[block[d]]))
    finals = frozenset(order[b] for b, q in witness.items() if q in dfa.finals)
    return Nfa(dfa.symbols, dfa.alphabet, len(order), frozenset(transitions), 0, finals)


def er_nfa(g: Cfg, config: Config | None = None) -> Nfa:
    """Autómata de L(g) para gramáticas muy degeneradas."""
    return ErConstruction(g, config).run().nfa
