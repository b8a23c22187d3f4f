"""Normalización de pushes y conversión PDS → gramática."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import replace

from ..automata.cfg import Cfg, GrammarBuilder, NonTerm, Symbol, Term
from ..core.errors import ContractError
from .model import INTERNAL, NaPds, NaRule, Pds, PdsRule

logger = logging.getLogger(__name__)

DRAIN = "⊣drain"


def _split_push(push: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
    """Partir un push largo en pasos (símbolo leído, push de 2).

    El primer paso no lee (se usa el tope de la regla original); los
    siguientes leen el símbolo que dejó el paso anterior.
    """
    n = len(push)
    steps: list[tuple[int, tuple[int, ...]]] = [(-1, (push[n - 2], push[n - 1]))]
    for k in range(2, n):
        # lee push[n-k], apila push[n-k-1] push[n-k]
        steps.append((push[n - k], (push[n - k - 1], push[n - k])))
    return steps


def pds_normalize(p: Pds) -> Pds:
    """Partir los pushes de longitud > 2 con controles nuevos y salida ε."""
    if p.is_normalized():
        return p
    controls = p.controls.copy()
    rules: list[PdsRule] = []
    for rule in p.rules:
        origin = rule.origin if rule.origin >= 0 else rule.id
        if len(rule.push) <= 2:
            rules.append(replace(rule, id=len(rules), origin=origin))
            continue
        steps = _split_push(rule.push)
        fresh = [
            controls.intern(f"{p.controls.name(rule.source)}~{rule.id}.{k}")
            for k in range(1, len(steps))
        ]
        chain = [rule.source, *fresh, rule.target]
        for k, (top, push) in enumerate(steps):
            rules.append(
                PdsRule(
                    id=len(rules),
                    source=chain[k],
                    top=rule.top if k == 0 else top,
                    label=rule.label if k == 0 else None,
                    target=chain[k + 1],
                    push=push,
                    origin=origin,
                    head=k == 0 and rule.head,
                )
            )
    return Pds(
        controls=controls.freeze(),
        stack=p.stack,
        outputs=p.outputs,
        alphabet=p.alphabet,
        rules=tuple(rules),
        initial=p.initial,
        finals=p.finals,
    )


def normalize_napds(p: NaPds) -> NaPds:
    """Igual que `pds_normalize`; la acción queda en la primera regla."""
    if all(len(r.push) <= 2 for r in p.rules):
        return p
    controls = p.controls.copy()
    rules: list[NaRule] = []
    for rule in p.rules:
        if len(rule.push) <= 2:
            rules.append(replace(rule, id=len(rules), origin=rule.original))
            continue
        steps = _split_push(rule.push)
        fresh = [
            controls.intern(f"{p.controls.name(rule.source)}~{rule.id}.{k}")
            for k in range(1, len(steps))
        ]
        chain = [rule.source, *fresh, rule.target]
        for k, (top, push) in enumerate(steps):
            rules.append(
                NaRule(
                    id=len(rules),
                    source=chain[k],
                    top=rule.top if k == 0 else top,
                    action=rule.action if k == 0 else INTERNAL,
                    target=chain[k + 1],
                    push=push,
                    origin=rule.original,
                    head=k == 0 and rule.head,
                )
            )
    return NaPds(
        name=p.name,
        controls=controls.freeze(),
        stack=p.stack,
        variables=p.variables,
        rules=tuple(rules),
        initial=p.initial,
    )


def pds_to_cfg(p: Pds) -> Cfg:
    """Gramática de tripletas [p, X, q] con un control de drenaje.

    La aceptación "control final, cualquier pila" se reduce a pila vacía:
    desde un control final (y desde el drenaje) se desapila en silencio hacia
    el drenaje. Los no terminales se generan bajo demanda desde el inicio.
    """
    if not p.is_normalized():
        raise ContractError("pds_to_cfg requires rules pushing at most 2 symbols")
    n = len(p.controls)
    drain = n
    all_controls = range(n + 1)

    def cname(c: int) -> str:
        return DRAIN if c == drain else p.controls.name(c)

    builder = GrammarBuilder(p.outputs, p.alphabet)
    triples: dict[tuple[int, int, int], NonTerm] = {}
    queue: deque[tuple[int, int, int]] = deque()

    def triple(src: int, sym: int, dst: int) -> NonTerm:
        key = (src, sym, dst)
        nt = triples.get(key)
        if nt is None:
            nt = builder.nonterminal(f"[{cname(src)},{p.stack.name(sym)},{cname(dst)}]")
            triples[key] = nt
            queue.append(key)
        return nt

    start = builder.nonterminal("S")
    builder.add(start, [triple(p.initial, 0, drain)])

    while queue:
        src, sym, dst = queue.popleft()
        head = triples[(src, sym, dst)]
        if (src == drain or src in p.finals) and dst == drain:
            builder.add(head, [])
        if src == drain:
            continue
        for rule in p.rules_from(src, sym):
            prefix: list[Symbol] = [] if rule.label is None else [Term(rule.label)]
            if len(rule.push) == 0:
                if rule.target == dst:
                    builder.add(head, prefix)
            elif len(rule.push) == 1:
                builder.add(head, [*prefix, triple(rule.target, rule.push[0], dst)])
            else:
                y, z = rule.push
                for mid in all_controls:
                    builder.add(
                        head, [*prefix, triple(rule.target, y, mid), triple(mid, z, dst)]
                    )

    g = builder.build(start)
    logger.debug(
        "PDS→CFG: %d no terminales, %d producciones", len(g.nonterminals), len(g.productions)
    )
    return g
