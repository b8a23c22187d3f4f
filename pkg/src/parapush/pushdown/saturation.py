"""Alcanzabilidad de controles por saturación hacia adelante (post*).

El autómata de configuraciones tiene un estado por control, un estado
intermedio por par (control destino, primer símbolo apilado) y un estado
final único. Cada transición guarda la razón de su primera inserción; el
testigo se obtiene deshaciendo esas razones desde la configuración hallada
hasta ⟨inicial, $⟩.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Collection, Hashable
from dataclasses import dataclass, field
from typing import Any

from ..core.errors import ContractError, InternalError, ResourceLimitError
from .model import BOTTOM_ID, PushdownSystem

logger = logging.getLogger(__name__)

# Estados del autómata: ("p", control), ("m", control, símbolo), ("f",)
State = tuple[Any, ...]
# Transición: (origen, símbolo o None para ε, destino)
Trans = tuple[State, int | None, State]

FINAL: State = ("f",)

_INITIAL = "initial"
_SWAP = "swap"
_POP = "pop"
_HEAD = "head"
_PUSH = "push"
_COMBINE = "combine"


@dataclass
class ReachabilityResult:
    """Resultado de `pds_control_reachable`."""

    reachable: bool
    trace: list[Any] = field(default_factory=list)
    control: Hashable | None = None
    transitions: int = 0

    @property
    def rule_ids(self) -> list[int]:
        return [getattr(rule, "id", -1) for rule in self.trace]


def _max_transitions(value: int | None) -> int:
    if value is not None:
        return value
    from ..config import get_config

    return get_config().max_saturation


def pds_control_reachable(
    system: PushdownSystem,
    targets: Collection[Hashable] | None = None,
    *,
    is_target: Any = None,
    max_transitions: int | None = None,
) -> ReachabilityResult:
    """¿Se alcanza algún control objetivo desde ⟨initial, $⟩?

    Los objetivos se dan como colección o como predicado `is_target`.
    Las reglas deben apilar a lo sumo dos símbolos.
    """
    if is_target is None:
        target_set = frozenset(targets or ())

        def is_target(control: Hashable) -> bool:
            return control in target_set

    cap = _max_transitions(max_transitions)
    if is_target(system.initial):
        return ReachabilityResult(True, [], system.initial, 0)

    start: Trans = (("p", system.initial), BOTTOM_ID, FINAL)
    reasons: dict[Trans, tuple[Any, ...]] = {start: (_INITIAL,)}
    worklist: deque[Trans] = deque([start])
    rel: set[Trans] = set()
    out_from: dict[State, list[Trans]] = {}
    eps_into: dict[State, list[Trans]] = {}
    found: Trans | None = None

    def add(t: Trans, reason: tuple[Any, ...]) -> None:
        if t not in reasons:
            reasons[t] = reason
            worklist.append(t)

    while worklist:
        t = worklist.popleft()
        if t in rel:
            continue
        rel.add(t)
        if len(rel) > cap:
            raise ResourceLimitError("max_saturation", cap, "saturation transitions")
        src, sym, dst = t
        if src[0] == "p" and is_target(src[1]):
            found = t
            break
        if sym is None:
            eps_into.setdefault(dst, []).append(t)
            for t2 in list(out_from.get(dst, ())):
                add((src, t2[1], t2[2]), (_COMBINE, t, t2))
            continue
        out_from.setdefault(src, []).append(t)
        for e in list(eps_into.get(src, ())):
            add((e[0], sym, dst), (_COMBINE, e, t))
        if src[0] != "p":
            continue
        for rule in system.rules_from(src[1], sym):
            push = rule.push
            target: State = ("p", rule.target)
            if len(push) == 0:
                add((target, None, dst), (_POP, rule, t))
            elif len(push) == 1:
                add((target, push[0], dst), (_SWAP, rule, t))
            elif len(push) == 2:
                mid: State = ("m", rule.target, push[0])
                add((target, push[0], mid), (_HEAD, rule))
                add((mid, push[1], dst), (_PUSH, rule, t))
            else:
                raise ContractError("saturation requires rules pushing at most 2 symbols")

    logger.debug("Saturación: %d transiciones", len(rel))
    if found is None:
        return ReachabilityResult(False, [], None, len(rel))
    generated: dict[State, list[Trans]] = {}
    for t in reasons:
        if t[1] is not None:
            generated.setdefault(t[0], []).append(t)
    trace = _extract_witness(found, reasons, generated, start)
    return ReachabilityResult(True, trace, found[0][1], len(rel))


def _path_to_final(state: State, out_from: dict[State, list[Trans]]) -> list[Trans]:
    """Camino de transiciones desde `state` hasta el estado final."""
    if state == FINAL:
        return []
    parent: dict[State, Trans | None] = {state: None}
    queue = deque([state])
    while queue:
        q = queue.popleft()
        for t in out_from.get(q, ()):
            nxt = t[2]
            if nxt in parent:
                continue
            parent[nxt] = t
            if nxt == FINAL:
                path: list[Trans] = []
                link = parent[nxt]
                while link is not None:
                    path.append(link)
                    link = parent[link[0]]
                path.reverse()
                return path
            queue.append(nxt)
    raise InternalError(f"no accepting path from saturation state {state!r}")


def _extract_witness(
    found: Trans,
    reasons: dict[Trans, tuple[Any, ...]],
    out_from: dict[State, list[Trans]],
    start: Trans,
) -> list[Any]:
    path = [found, *_path_to_final(found[2], out_from)]
    steps: list[Any] = []
    while path != [start]:
        head = path[0]
        reason = reasons[head]
        kind = reason[0]
        if kind in (_SWAP, _POP):
            steps.append(reason[1])
            path = [reason[2], *path[1:]]
        elif kind == _HEAD:
            push_reason = reasons[path[1]]
            if push_reason[0] != _PUSH:
                raise InternalError("malformed saturation bookkeeping")
            steps.append(push_reason[1])
            path = [push_reason[2], *path[2:]]
        elif kind == _COMBINE:
            path = [reason[1], reason[2], *path[1:]]
        else:
            raise InternalError(f"unexpected saturation reason {kind!r} at {head!r}")
    steps.reverse()
    return steps
