"""Simulador explícito y acotado de redes maestro + n esclavos.

Se usa como oráculo en las pruebas y para validar testigos. Las trazas son
listas de pares (proceso, id de regla); el proceso 0 es el maestro.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from ..config import get_config
from ..core.errors import InputError
from ..pushdown.model import BOTTOM_ID, ActionKind, NaRule

if TYPE_CHECKING:
    from ..param.instance import ParamInstance

logger = logging.getLogger(__name__)

Step = tuple[int, int]


class Outcome(str, Enum):
    REACHED = "REACHED"
    NOT_REACHED = "NOT_REACHED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True, slots=True)
class NpdsConfig:
    """Controles y pilas (cima primero) por proceso, más los valores globales."""

    controls: tuple[int, ...]
    stacks: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]

    @classmethod
    def initial(cls, inst: ParamInstance, n: int) -> NpdsConfig:
        return cls(
            (inst.master.initial,) + (inst.slave.initial,) * n,
            ((BOTTOM_ID,),) * (n + 1),
            tuple(var.initial for var in inst.variables),
        )

    def canonical(self) -> tuple[object, ...]:
        """Clave con los esclavos ordenados (simetría)."""
        slaves = sorted(zip(self.controls[1:], self.stacks[1:], strict=True))
        return (self.controls[0], self.stacks[0], tuple(slaves), self.values)


@dataclass
class SimulationResult:
    outcome: Outcome
    trace: list[Step] = field(default_factory=list)
    explored: int = 0
    truncated: bool = False

    @property
    def reached(self) -> bool:
        return self.outcome is Outcome.REACHED


def fire(config: NpdsConfig, process: int, rule: NaRule) -> NpdsConfig | None:
    """Aplicar `rule` en `process`; None si no está habilitada."""
    stack = config.stacks[process]
    if config.controls[process] != rule.source or stack[0] != rule.top:
        return None
    values = config.values
    action = rule.action
    if action.kind is ActionKind.READ:
        if values[action.var] != action.value:
            return None
    elif action.kind is ActionKind.WRITE:
        values = values[: action.var] + (action.value,) + values[action.var + 1 :]
    controls = config.controls[:process] + (rule.target,) + config.controls[process + 1 :]
    new_stack = rule.push + stack[1:]
    stacks = config.stacks[:process] + (new_stack,) + config.stacks[process + 1 :]
    return NpdsConfig(controls, stacks, values)


def _successors(
    inst: ParamInstance, config: NpdsConfig, symmetry: bool
) -> Iterator[tuple[Step, NpdsConfig]]:
    seen: set[tuple[int, tuple[int, ...]]] = set()
    for process in range(len(config.controls)):
        if symmetry and process > 0:
            key = (config.controls[process], config.stacks[process])
            if key in seen:
                continue
            seen.add(key)
        system = inst.process(process)
        for rule in system.rules_from(config.controls[process], config.stacks[process][0]):
            nxt = fire(config, process, rule)
            if nxt is not None:
                yield (process, rule.id), nxt


def simulate(
    inst: ParamInstance,
    n: int,
    depth: int,
    stack_bound: int = 8,
    max_states: int | None = None,
    *,
    symmetry: bool = True,
    dedup: bool = True,
) -> SimulationResult:
    """BFS acotado en profundidad, altura de pila y número de configuraciones."""
    if n < 0 or depth < 0 or stack_bound < 1:
        raise InputError("slave count and depth must be non-negative, stack bound positive")
    cap = max_states if max_states is not None else get_config().max_oracle_states

    start = NpdsConfig.initial(inst, n)
    if start.controls[0] == inst.target:
        return SimulationResult(Outcome.REACHED, [], 1)

    nodes: list[tuple[NpdsConfig, int, Step | None]] = [(start, -1, None)]
    visited: set[object] = {start.canonical() if symmetry else start}
    frontier = deque([0])
    truncated = False
    for level in range(depth):
        next_frontier: deque[int] = deque()
        for index in frontier:
            config = nodes[index][0]
            for step, nxt in _successors(inst, config, symmetry):
                if max(len(s) for s in nxt.stacks) > stack_bound:
                    truncated = True
                    continue
                if dedup:
                    key = nxt.canonical() if symmetry else nxt
                    if key in visited:
                        continue
                    visited.add(key)
                nodes.append((nxt, index, step))
                if nxt.controls[0] == inst.target:
                    logger.debug("Objetivo alcanzado en profundidad %d", level + 1)
                    return SimulationResult(
                        Outcome.REACHED, _trace(nodes, len(nodes) - 1), len(nodes)
                    )
                if len(nodes) > cap:
                    logger.info("Oráculo: límite de %d configuraciones", cap)
                    return SimulationResult(Outcome.INCONCLUSIVE, [], len(nodes), True)
                next_frontier.append(len(nodes) - 1)
        frontier = next_frontier
        if not frontier:
            break
    else:
        truncated = truncated or bool(frontier)
    return SimulationResult(Outcome.NOT_REACHED, [], len(nodes), truncated)


def _trace(nodes: list[tuple[NpdsConfig, int, Step | None]], index: int) -> list[Step]:
    steps: list[Step] = []
    while index > 0:
        _, parent, step = nodes[index]
        assert step is not None
        steps.append(step)
        index = parent
    steps.reverse()
    return steps


def run_trace(inst: ParamInstance, n: int, trace: Sequence[Step]) -> NpdsConfig | None:
    """Configuración final de la traza; None si algún paso no está habilitado."""
    config = NpdsConfig.initial(inst, n)
    for number, (process, rule_id) in enumerate(trace, 1):
        if not 0 <= process <= n:
            raise InputError(f"step {number}: process {process} outside [0, {n}]")
        system = inst.process(process)
        if not 0 <= rule_id < len(system.rules):
            raise InputError(f"step {number}: {system.name} has no rule {rule_id}")
        nxt = fire(config, process, system.rule(rule_id))
        if nxt is None:
            return None
        config = nxt
    return config


def replay(inst: ParamInstance, n: int, trace: Sequence[Step]) -> bool:
    """¿La traza es ejecutable y termina con el maestro en el objetivo?"""
    final = run_trace(inst, n, trace)
    return final is not None and final.controls[0] == inst.target


def peak_stack(inst: ParamInstance, n: int, trace: Sequence[Step]) -> int:
    """Altura máxima de pila a lo largo de una traza ejecutable."""
    config = NpdsConfig.initial(inst, n)
    peak = 1
    for process, rule_id in trace:
        nxt = fire(config, process, inst.process(process).rule(rule_id))
        if nxt is None:
            break
        config = nxt
        peak = max(peak, len(config.stacks[process]))
    return peak


def format_trace(trace: Sequence[Step]) -> str:
    return "".join(f"{process} {rule}\n" for process, rule in trace)


def parse_trace(text: str, source: str = "<trace>") -> list[Step]:
    """Leer `<proceso> <regla>` por línea; `#` inicia un comentario."""
    steps: list[Step] = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise InputError(
                f"expected '<process> <rule>', got {line!r}", line=number, source=source
            )
        steps.append((int(parts[0]), int(parts[1])))
    return steps
