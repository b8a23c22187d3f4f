"""Gramáticas libres de contexto: forma normal de Chomsky y CYK."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import product

from ..core.errors import ContractError
from ..core.symbols import SymbolTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Term:
    """Referencia a un terminal."""

    id: int


@dataclass(frozen=True, slots=True)
class NonTerm:
    """Referencia a un no terminal."""

    id: int


Symbol = Term | NonTerm


@dataclass(frozen=True, slots=True)
class Production:
    """Producción `head -> body`."""

    head: int
    body: tuple[Symbol, ...]


@dataclass(frozen=True)
class Cfg:
    """Gramática libre de contexto.

    `terminals` es la tabla compartida con los demás objetos del problema;
    `alphabet` es el subconjunto de ids que la gramática declara. Si `cnf` es
    verdadero, todos los cuerpos son `[NonTerm, NonTerm]` o `[Term]` y la
    palabra vacía se representa solo con `start_nullable`.
    """

    terminals: SymbolTable
    alphabet: frozenset[int]
    nonterminals: SymbolTable
    productions: tuple[Production, ...]
    start: int
    cnf: bool = False
    start_nullable: bool = False
    _binary: tuple[tuple[int, int, int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )
    _unary: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.nonterminals)
        if not 0 <= self.start < n:
            raise ContractError(f"start nonterminal {self.start} not declared")
        for prod in self.productions:
            if not 0 <= prod.head < n:
                raise ContractError(f"production head {prod.head} not declared")
            for sym in prod.body:
                if isinstance(sym, NonTerm):
                    if not 0 <= sym.id < n:
                        raise ContractError(f"nonterminal {sym.id} not declared")
                elif sym.id not in self.alphabet:
                    raise ContractError(f"terminal {sym.id} not in grammar alphabet")
        if not self.cnf:
            if self.start_nullable:
                raise ContractError("start_nullable is only meaningful for CNF grammars")
            object.__setattr__(self, "_binary", ())
            object.__setattr__(self, "_unary", {})
            return
        binary: list[tuple[int, int, int]] = []
        unary: dict[int, int] = {}
        for prod in self.productions:
            body = prod.body
            if len(body) == 2 and isinstance(body[0], NonTerm) and isinstance(body[1], NonTerm):
                binary.append((prod.head, body[0].id, body[1].id))
            elif len(body) == 1 and isinstance(body[0], Term):
                unary[body[0].id] = unary.get(body[0].id, 0) | (1 << prod.head)
            else:
                raise ContractError("CNF-flagged grammar has a non-CNF production")
        object.__setattr__(self, "_binary", tuple(binary))
        object.__setattr__(self, "_unary", unary)

    def binary_rules(self) -> tuple[tuple[int, int, int], ...]:
        """Producciones `A -> B C` como ternas (solo CNF)."""
        return self._binary

    def terminal_rules(self) -> list[tuple[int, int]]:
        """Producciones `A -> a` como pares (solo CNF)."""
        return [
            (p.head, p.body[0].id)
            for p in self.productions
            if len(p.body) == 1 and isinstance(p.body[0], Term)
        ]

    def by_head(self) -> dict[int, list[Production]]:
        out: dict[int, list[Production]] = {}
        for prod in self.productions:
            out.setdefault(prod.head, []).append(prod)
        return out

    def __getstate__(self) -> dict[str, object]:
        state = dict(self.__dict__)
        state.pop("_binary", None)
        state.pop("_unary", None)
        return state

    def __setstate__(self, state: dict[str, object]) -> None:
        for key, value in state.items():
            object.__setattr__(self, key, value)
        self.__post_init__()


class GrammarBuilder:
    """Construcción incremental de una `Cfg` por nombres."""

    def __init__(self, terminals: SymbolTable, alphabet: Iterable[int] = ()) -> None:
        self.terminals = terminals
        self.alphabet = set(alphabet)
        self.nonterminals = SymbolTable()
        self._productions: dict[Production, None] = {}

    def nonterminal(self, name: str) -> NonTerm:
        return NonTerm(self.nonterminals.intern(name))

    def terminal(self, name: str) -> Term:
        ident = self.terminals.intern(name)
        self.alphabet.add(ident)
        return Term(ident)

    def term(self, ident: int) -> Term:
        self.alphabet.add(ident)
        return Term(ident)

    def fresh(self, base: str) -> NonTerm:
        """No terminal nuevo con nombre derivado de `base`."""
        name = base
        k = 1
        while name in self.nonterminals:
            name = f"{base}#{k}"
            k += 1
        return self.nonterminal(name)

    def add(self, head: NonTerm | str, body: Sequence[Symbol | str] = ()) -> None:
        """Agregar producción; los `str` del cuerpo son no terminales."""
        if isinstance(head, str):
            head = self.nonterminal(head)
        refs: list[Symbol] = [self.nonterminal(s) if isinstance(s, str) else s for s in body]
        for ref in refs:
            if isinstance(ref, Term):
                self.alphabet.add(ref.id)
        self._productions[Production(head.id, tuple(refs))] = None

    def build(
        self, start: NonTerm | str, *, cnf: bool = False, start_nullable: bool = False
    ) -> Cfg:
        if isinstance(start, str):
            start = self.nonterminal(start)
        return Cfg(
            terminals=self.terminals,
            alphabet=frozenset(self.alphabet),
            nonterminals=self.nonterminals.copy().freeze(),
            productions=tuple(self._productions),
            start=start.id,
            cnf=cnf,
            start_nullable=start_nullable,
        )


def productive_nonterminals(g: Cfg) -> set[int]:
    """Menor punto fijo de no terminales que derivan alguna palabra."""
    productive: set[int] = set()
    changed = True
    while changed:
        changed = False
        for prod in g.productions:
            if prod.head in productive:
                continue
            if all(isinstance(s, Term) or s.id in productive for s in prod.body):
                productive.add(prod.head)
                changed = True
    return productive


def cfg_is_empty(g: Cfg) -> bool:
    """L(g) = ∅."""
    if g.cnf and g.start_nullable:
        return False
    return g.start not in productive_nonterminals(g)


# Cuerpos intermedios: no terminales por nombre, terminales como Term.
_Body = tuple[str | Term, ...]


def cfg_to_cnf(g: Cfg) -> Cfg:
    """Convertir a forma normal de Chomsky.

    Orden: eliminar ε (registrando si S es anulable), eliminar unitarias,
    eliminar símbolos inútiles, extraer terminales y binarizar.
    """
    if g.cnf:
        return g
    names = g.nonterminals
    start = names.name(g.start)
    rules: dict[str, set[_Body]] = {name: set() for name in names}
    for prod in g.productions:
        body: _Body = tuple(names.name(s.id) if isinstance(s, NonTerm) else s for s in prod.body)
        rules[names.name(prod.head)].add(body)

    # 1. anulables y eliminación de ε
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, bodies in rules.items():
            if head in nullable:
                continue
            if any(all(isinstance(s, str) and s in nullable for s in b) for b in bodies):
                nullable.add(head)
                changed = True
    start_nullable = start in nullable
    no_eps: dict[str, set[_Body]] = {name: set() for name in rules}
    for head, bodies in rules.items():
        for body in bodies:
            options = [
                ((s,), ()) if isinstance(s, str) and s in nullable else ((s,),) for s in body
            ]
            for choice in product(*options):
                variant = tuple(s for part in choice for s in part)
                if variant:
                    no_eps[head].add(variant)

    # 2. clausura de pares unitarios
    unit: dict[str, set[str]] = {}
    for name in no_eps:
        reach = {name}
        stack = [name]
        while stack:
            a = stack.pop()
            for body in no_eps[a]:
                if len(body) == 1 and isinstance(body[0], str) and body[0] not in reach:
                    reach.add(body[0])
                    stack.append(body[0])
        unit[name] = reach
    no_unit: dict[str, set[_Body]] = {}
    for name, reach in unit.items():
        no_unit[name] = {
            body
            for b in reach
            for body in no_eps[b]
            if not (len(body) == 1 and isinstance(body[0], str))
        }

    # 3. símbolos inútiles: improductivos y luego inalcanzables
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, bodies in no_unit.items():
            if head not in productive and any(
                all(not isinstance(s, str) or s in productive for s in b) for b in bodies
            ):
                productive.add(head)
                changed = True
    useful = {
        head: {b for b in bodies if all(not isinstance(s, str) or s in productive for s in b)}
        for head, bodies in no_unit.items()
        if head in productive
    }
    reachable = {start} if start in useful else set()
    stack = list(reachable)
    while stack:
        a = stack.pop()
        for body in useful[a]:
            for s in body:
                if isinstance(s, str) and s not in reachable:
                    reachable.add(s)
                    stack.append(s)

    # 4 y 5. terminales en cuerpos largos y binarización
    builder = GrammarBuilder(g.terminals, g.alphabet)
    builder.nonterminal(start)
    for name in sorted(reachable):
        builder.nonterminal(name)
    lifted: dict[int, NonTerm] = {}

    def lift(sym: str | Term) -> NonTerm:
        if isinstance(sym, str):
            return builder.nonterminal(sym)
        if sym.id not in lifted:
            lifted[sym.id] = builder.fresh(f"T<{g.terminals.name(sym.id)}>")
            builder.add(lifted[sym.id], [sym])
        return lifted[sym.id]

    for head in sorted(reachable):
        for body in sorted(useful[head], key=repr):
            if len(body) == 1:
                builder.add(head, [body[0]])
                continue
            refs = [lift(s) for s in body]
            current = builder.nonterminal(head)
            while len(refs) > 2:
                nxt = builder.fresh(f"{head}'")
                builder.add(current, [refs[0], nxt])
                current = nxt
                refs = refs[1:]
            builder.add(current, refs)

    result = builder.build(start, cnf=True, start_nullable=start_nullable)
    logger.debug(
        "CNF: %d -> %d producciones, %d no terminales",
        len(g.productions),
        len(result.productions),
        len(result.nonterminals),
    )
    return result


def cyk_table(g: Cfg, word: Sequence[int]) -> list[list[int]]:
    """Tabla CYK: `table[i][l-1]` es el bitset de no terminales que derivan word[i:i+l]."""
    if not g.cnf:
        raise ContractError("CYK requires a CNF grammar")
    n = len(word)
    table = [[0] * (n - i) for i in range(n)]
    for i, sym in enumerate(word):
        table[i][0] = g._unary.get(sym, 0)
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            mask = 0
            for split in range(1, length):
                left = table[i][split - 1]
                if not left:
                    continue
                right = table[i + split][length - split - 1]
                if not right:
                    continue
                for head, b, c in g._binary:
                    if (left >> b) & 1 and (right >> c) & 1:
                        mask |= 1 << head
            table[i][length - 1] = mask
    return table


def cfg_member(g: Cfg, word: Sequence[int]) -> bool:
    """Pertenencia por CYK."""
    if not g.cnf:
        raise ContractError("cfg_member requires a CNF grammar")
    if not word:
        return g.start_nullable
    if any(sym not in g.alphabet for sym in word):
        return False
    table = cyk_table(g, word)
    return bool((table[0][len(word) - 1] >> g.start) & 1)
