"""Generadores aleatorios y oráculos de fuerza bruta para las pruebas."""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Sequence
from itertools import product
from pathlib import Path

from parapush.automata.cfg import Cfg, NonTerm, Term
from parapush.automata.grammar_text import parse_grammar
from parapush.automata.nfa import Nfa, NfaBuilder
from parapush.cli.instance_file import parse_instance
from parapush.core.symbols import SymbolTable
from parapush.param.instance import ParamInstance
from parapush.pushdown.model import (
    BOTTOM,
    BOTTOM_ID,
    INTERNAL,
    Action,
    NaPds,
    NaRule,
    Pds,
    PdsConfig,
    PdsRule,
    Variable,
    apply_rule,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def load(name: str) -> ParamInstance:
    """Instancia de `instances/`."""
    path = INSTANCES / name
    return parse_instance(path.read_text(encoding="utf-8"), str(path))


def grammar(text: str, terminals: SymbolTable | None = None) -> Cfg:
    return parse_grammar(text, terminals)


def words(alphabet: Sequence[int], max_len: int) -> Iterable[tuple[int, ...]]:
    """Todas las palabras de longitud ≤ max_len."""
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


# ---------------------------------------------------------------- gramáticas


def random_grammar(rng: random.Random, terminals: SymbolTable, max_nts: int = 4) -> Cfg:
    """Gramática sin producciones ε sobre {a, b}."""
    n = rng.randint(1, max_nts)
    heads = [f"N{i}" for i in range(n)]
    lines = []
    for head in heads:
        for _ in range(rng.randint(1, 3)):
            size = rng.randint(1, 3)
            body = [rng.choice([*heads, "a", "b"]) for _ in range(size)]
            lines.append(f"{head} -> {' '.join(body)}")
    # todos los no terminales deben aparecer como cabeza: ya lo hacen
    return parse_grammar("\n".join(lines), terminals)


def derivable_words(g: Cfg, max_len: int) -> set[tuple[int, ...]]:
    """Palabras de L(g) con |w| ≤ max_len, por derivaciones por la izquierda.

    Completo solo para gramáticas sin producciones ε: las formas
    sentenciales nunca se acortan.
    """
    by_head = g.by_head()
    start: tuple[Term | NonTerm, ...] = (NonTerm(g.start),)
    seen = {start}
    queue = deque([start])
    found: set[tuple[int, ...]] = set()
    while queue:
        form = queue.popleft()
        index = next((i for i, s in enumerate(form) if isinstance(s, NonTerm)), None)
        if index is None:
            found.add(tuple(s.id for s in form))
            continue
        for prod in by_head.get(form[index].id, []):
            nxt = form[:index] + prod.body + form[index + 1 :]
            if len(nxt) <= max_len and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return found


# ---------------------------------------------------------------- autómatas


def random_nfa(rng: random.Random, symbols: SymbolTable, states: int = 4) -> Nfa:
    alphabet = list(symbols.ids())
    builder = NfaBuilder(symbols, alphabet)
    for _ in range(states):
        builder.new_state(final=rng.random() < 0.3)
    for src in range(states):
        for a in alphabet:
            for dst in range(states):
                if rng.random() < 0.25:
                    builder.add(src, a, dst)
    return builder.build()


def accepts_by_paths(nfa: Nfa, word: Sequence[int]) -> bool:
    """Enumeración de caminos (sin conjuntos)."""

    def walk(state: int, i: int) -> bool:
        if i == len(word):
            return state in nfa.finals
        return any(
            walk(dst, i + 1) for src, a, dst in nfa.transitions if src == state and a == word[i]
        )

    return walk(nfa.initial, 0)


# ---------------------------------------------------------------- PDS


def random_pds(rng: random.Random, controls: int = 3, rules: int = 6) -> Pds:
    """PDS sin etiquetas con pila {$, X, Y} respetando el fondo."""
    stack = SymbolTable([BOTTOM, "X", "Y"]).freeze()
    names = SymbolTable(f"p{i}" for i in range(controls)).freeze()
    out: list[PdsRule] = []
    for i in range(rules):
        top = rng.randrange(3)
        if top == BOTTOM_ID:
            push = rng.choice([(BOTTOM_ID,), (1, BOTTOM_ID), (2, BOTTOM_ID)])
        else:
            push = rng.choice([(), (1,), (2,), (1, top), (2, top)])
        out.append(
            PdsRule(i, rng.randrange(controls), top, None, rng.randrange(controls), push)
        )
    return Pds(names, stack, SymbolTable().freeze(), frozenset(), tuple(out), 0, frozenset())


def bfs_reachable_controls(pds: Pds, stack_bound: int) -> tuple[set[object], bool]:
    """Controles alcanzables con pila ≤ stack_bound; el bool indica si hubo poda."""
    start = PdsConfig(pds.initial)
    seen = {start}
    queue = deque([start])
    truncated = False
    while queue:
        config = queue.popleft()
        for rule in pds.rules_from(config.control, config.top):  # type: ignore[arg-type]
            nxt = apply_rule(config, rule)
            if nxt is None or nxt in seen:
                continue
            if len(nxt.stack) > stack_bound:
                truncated = True
                continue
            seen.add(nxt)
            queue.append(nxt)
    return {c.control for c in seen}, truncated


# ---------------------------------------------------------------- instancias


def one_variable(values: Sequence[str], initial: int = 0, name: str = "g") -> Variable:
    return Variable(name, SymbolTable(values).freeze(), initial)


def random_napds(
    rng: random.Random, name: str, variables: tuple[Variable, ...], controls: int, rules: int
) -> NaPds:
    stack = SymbolTable([BOTTOM, "X"]).freeze()
    names = SymbolTable(f"{name[0]}{i}" for i in range(controls)).freeze()
    out: list[NaRule] = []
    for i in range(rules):
        top = rng.randrange(2)
        push = rng.choice([(BOTTOM_ID,), (1, BOTTOM_ID)]) if top == BOTTOM_ID else rng.choice(
            [(), (1,), (1, 1)]
        )
        kind = rng.random()
        var = rng.randrange(len(variables))
        value = rng.randrange(len(variables[var].values))
        if kind < 0.35:
            action = Action.read(var, value)
        elif kind < 0.75:
            action = Action.write(var, value)
        else:
            action = INTERNAL
        out.append(NaRule(i, rng.randrange(controls), top, action, rng.randrange(controls), push))
    return NaPds(name, names, stack, variables, tuple(out), 0)


def random_instance(rng: random.Random) -> ParamInstance:
    """Instancia pequeña: ≤ 3 controles por proceso, ≤ 3 valores, k ≤ 2."""
    k = rng.choice([1, 1, 2])
    variables = tuple(
        one_variable([str(v) for v in range(rng.randint(2, 3))], name=f"g{i}") for i in range(k)
    )
    master = random_napds(rng, "master", variables, 3, rng.randint(2, 5))
    slave = random_napds(rng, "slave", variables, 3, rng.randint(2, 6))
    return ParamInstance(master, slave, variables, 2)


def with_rules(
    process: NaPds, controls: Sequence[str], extra: Sequence[tuple[int, Action, int]]
) -> NaPds:
    """Copia de `process` con controles y reglas `$ -> $` añadidos al final."""
    names = SymbolTable([*process.controls, *controls]).freeze()
    rules = list(process.rules)
    for source, action, target in extra:
        rules.append(NaRule(len(rules), source, BOTTOM_ID, action, target, (BOTTOM_ID,)))
    return NaPds(process.name, names, process.stack, process.variables, tuple(rules), 0)


def cross_variable_instance(rng: random.Random) -> ParamInstance:
    """Instancia con k = 2 donde un esclavo lee g0 antes de escribir g1."""
    variables = tuple(
        one_variable([str(v) for v in range(rng.randint(2, 3))], name=f"g{i}") for i in range(2)
    )
    master = random_napds(rng, "master", variables, 3, rng.randint(2, 4))
    slave = random_napds(rng, "slave", variables, 3, rng.randint(1, 4))
    first = rng.randrange(1, len(variables[0].values))
    second = rng.randrange(1, len(variables[1].values))
    # s0 escribe g0; otra copia lo lee y escribe g1
    slave = with_rules(
        slave,
        ["w0", "r0", "w1"],
        [
            (0, Action.write(0, first), 3),
            (0, Action.read(0, first), 4),
            (4, Action.write(1, second), 5),
        ],
    )
    if rng.random() < 0.7:
        master = with_rules(master, [], [(rng.randrange(2), Action.read(1, second), 2)])
    return ParamInstance(master, slave, variables, 2)


def random_labeled_pds(rng: random.Random, rules: int = 6) -> Pds:
    """PDS con salida {a, b}; solo las reglas etiquetadas hacen crecer la pila."""
    outputs = SymbolTable(["a", "b"]).freeze()
    stack = SymbolTable([BOTTOM, "X", "Y"]).freeze()
    count = rng.randint(2, 3)
    names = SymbolTable(f"p{i}" for i in range(count)).freeze()
    out: list[PdsRule] = []
    for i in range(rules):
        top = rng.randrange(3)
        label = rng.choice([None, 0, 1])
        if label is None:
            push = (BOTTOM_ID,) if top == BOTTOM_ID else rng.choice([(), (1,), (2,)])
        elif top == BOTTOM_ID:
            push = rng.choice([(BOTTOM_ID,), (1, BOTTOM_ID), (2, 1, BOTTOM_ID)])
        else:
            push = rng.choice([(), (1,), (2, top), (1, 2, top)])
        out.append(PdsRule(i, rng.randrange(count), top, label, rng.randrange(count), push))
    finals = frozenset(c for c in range(count) if rng.random() < 0.5) or frozenset({count - 1})
    return Pds(names, stack, outputs, frozenset({0, 1}), tuple(out), 0, finals)


def bfs_accepted_words(pds: Pds, max_len: int) -> set[tuple[int, ...]]:
    """Salidas de longitud ≤ max_len con las que se toca un control final.

    Exacto cuando las reglas sin etiqueta no hacen crecer la pila.
    """
    start = (pds.initial, (BOTTOM_ID,), ())
    seen = {start}
    queue = deque([start])
    accepted: set[tuple[int, ...]] = set()
    while queue:
        control, stack, out = queue.popleft()
        if control in pds.finals:
            accepted.add(out)
        for rule in pds.rules_from(control, stack[0]):
            emitted = out if rule.label is None else (*out, rule.label)
            if len(emitted) > max_len:
                continue
            nxt = (rule.target, rule.push + stack[1:], emitted)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return accepted
