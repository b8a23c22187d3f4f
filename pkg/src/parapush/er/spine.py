"""Alfabeto marcado, tipos de espina y sus autómatas."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations

from ..automata.cfg import Cfg
from ..automata.nfa import Nfa, NfaBuilder
from ..core.errors import ContractError, ResourceLimitError
from ..core.symbols import SymbolTable

logger = logging.getLogger(__name__)


class MarkKind(str, Enum):
    BINARY = "binary"
    TERMINAL = "terminal"
    LEAF = "leaf"


@dataclass(frozen=True, slots=True)
class MarkedSymbol:
    """(A, B, C, k), (A, a) o la etiqueta de hoja a."""

    kind: MarkKind
    head: int = -1
    left: int = -1
    right: int = -1
    child: int = 0
    terminal: int = -1

    @classmethod
    def binary(cls, head: int, left: int, right: int, child: int) -> MarkedSymbol:
        if child not in (1, 2):
            raise ContractError("binary marking direction must be 1 or 2")
        return cls(MarkKind.BINARY, head, left, right, child)

    @classmethod
    def terminal_mark(cls, head: int, terminal: int) -> MarkedSymbol:
        return cls(MarkKind.TERMINAL, head, terminal=terminal)

    @classmethod
    def leaf(cls, terminal: int) -> MarkedSymbol:
        return cls(MarkKind.LEAF, terminal=terminal)

    @property
    def continues_into(self) -> int:
        """No terminal en el que sigue el camino (-1 si termina)."""
        if self.kind is not MarkKind.BINARY:
            return -1
        return self.left if self.child == 1 else self.right

    def render(self, g: Cfg) -> str:
        nts = g.nonterminals
        if self.kind is MarkKind.BINARY:
            return (
                f"({nts.name(self.head)},{nts.name(self.left)},"
                f"{nts.name(self.right)},{self.child})"
            )
        if self.kind is MarkKind.TERMINAL:
            return f"({nts.name(self.head)},{g.terminals.name(self.terminal)})"
        return g.terminals.name(self.terminal)


SpineType = tuple[MarkedSymbol, ...]


@dataclass(frozen=True)
class MarkedAlphabet(Sequence[MarkedSymbol]):
    """Λ̄ de una gramática CNF, con ids internados para los autómatas."""

    grammar: Cfg
    marks: tuple[MarkedSymbol, ...]
    table: SymbolTable = field(compare=False)
    _ids: dict[MarkedSymbol, int] = field(compare=False, repr=False)

    def id(self, mark: MarkedSymbol) -> int:
        return self._ids[mark]

    def render(self, x: Sequence[MarkedSymbol]) -> str:
        return "·".join(m.render(self.grammar) for m in x)

    def __getitem__(self, index):  # type: ignore[no-untyped-def, override]
        return self.marks[index]

    def __len__(self) -> int:
        return len(self.marks)

    def __iter__(self) -> Iterator[MarkedSymbol]:
        return iter(self.marks)


def marked_alphabet(g: Cfg) -> MarkedAlphabet:
    """Todas las marcas (A,B,C,1), (A,B,C,2), (A,a) y las hojas a."""
    if not g.cnf:
        raise ContractError("marked_alphabet requires a CNF grammar")
    marks: list[MarkedSymbol] = []
    for head, b, c in g.binary_rules():
        marks.append(MarkedSymbol.binary(head, b, c, 1))
        marks.append(MarkedSymbol.binary(head, b, c, 2))
    for head, a in g.terminal_rules():
        marks.append(MarkedSymbol.terminal_mark(head, a))
    for a in sorted(g.alphabet):
        marks.append(MarkedSymbol.leaf(a))
    table = SymbolTable()
    ids: dict[MarkedSymbol, int] = {}
    for mark in marks:
        ids[mark] = table.intern(mark.render(g))
    return MarkedAlphabet(g, tuple(marks), table.freeze(), ids)


def enumerate_types(
    alphabet: Sequence[MarkedSymbol], max_marked: int | None = None
) -> Iterator[SpineType]:
    """Todas las secuencias sin repetición, por longitud y luego lexicográficas."""
    if max_marked is None:
        from ..config import get_config

        max_marked = get_config().max_marked
    marks = tuple(alphabet)
    if len(marks) > max_marked:
        raise ResourceLimitError(
            "max_marked", max_marked, f"marked alphabet has {len(marks)} symbols"
        )
    return (x for r in range(1, len(marks) + 1) for x in permutations(marks, r))


def type_nfa(x: Sequence[MarkedSymbol], alphabet: MarkedAlphabet) -> Nfa:
    """Autómata de (a1 ∪ a1Λ̄*a1)...(as ∪ asΛ̄*as): las palabras de tipo x."""
    if len(set(x)) != len(x):
        raise ContractError("a spine type may not repeat a symbol")
    builder = NfaBuilder(alphabet.table, alphabet.table.ids())
    closed = builder.new_state()
    for mark in x:
        a = alphabet.id(mark)
        middle = builder.new_state()
        nxt = builder.new_state()
        builder.add(closed, a, nxt)
        builder.add(closed, a, middle)
        builder.add_loop_all(middle)
        builder.add(middle, a, nxt)
        closed = nxt
    builder.finals.add(closed)
    return builder.build()


def spine_consistent_types(
    g: Cfg, alphabet: MarkedAlphabet | None = None, max_types: int | None = None
) -> list[SpineType]:
    """Tipos que pueden aparecer en algún T(w).

    Son caminos simples del grafo de marcas que empiezan en una marca con
    cabeza S y terminan en una marca terminal (A, a).
    """
    if max_types is None:
        from ..config import get_config

        max_types = get_config().max_types
    alphabet = alphabet or marked_alphabet(g)
    by_head: dict[int, list[MarkedSymbol]] = {}
    for mark in alphabet:
        if mark.kind is not MarkKind.LEAF:
            by_head.setdefault(mark.head, []).append(mark)

    found: list[SpineType] = []
    path: list[MarkedSymbol] = []
    on_path: set[MarkedSymbol] = set()
    # DFS iterativo: (marca, iterador de sucesores)
    stack: list[tuple[MarkedSymbol, Iterator[MarkedSymbol]]] = []

    def push(mark: MarkedSymbol) -> None:
        path.append(mark)
        on_path.add(mark)
        if mark.kind is MarkKind.TERMINAL:
            found.append(tuple(path))
            if len(found) > max_types:
                raise ResourceLimitError(
                    "max_types", max_types, "spine-consistent types", stage=None
                )
            stack.append((mark, iter(())))
        else:
            stack.append((mark, iter(by_head.get(mark.continues_into, ()))))

    for first in by_head.get(g.start, ()):
        push(first)
        while stack:
            _, successors = stack[-1]
            nxt = next((m for m in successors if m not in on_path), None)
            if nxt is None:
                mark, _ = stack.pop()
                path.pop()
                on_path.discard(mark)
            else:
                push(nxt)

    order = {m: i for i, m in enumerate(alphabet)}
    found.sort(key=lambda x: (len(x), [order[m] for m in x]))
    logger.debug("Tipos de espina consistentes: %d", len(found))
    return found
