"""Reconstrucción de testigos concretos a partir de una traza del producto.

Cada escritura aceptada de la traza recibe su propia copia del esclavo. La
copia repite una ejecución de P_w(g) cuya palabra de lectura es subpalabra
de lo que consumió el autómata de su componente; cada lectura o KILL se
ejecuta en la posición de la traza donde el autómata consumió ese símbolo y
la escritura final en la posición de la escritura aceptada.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from ..config import Config, get_config
from ..core.errors import ContractError, InternalError
from ..oracle.simulate import Outcome, peak_stack, replay, simulate
from ..pushdown.convert import pds_normalize
from ..pushdown.model import ActionKind, Pds, PdsRule
from ..pushdown.saturation import pds_control_reachable
from ..readlang.write_pds import build_write_pds
from .check import CheckResult
from .instance import ParamInstance
from .product import MoveKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class WitnessStep:
    """Paso (proceso, regla original); `note` es "kill" o "write" en escrituras de esclavos."""

    process: int
    rule: int
    note: str = ""


@dataclass(frozen=True)
class Witness:
    slave_count: int
    steps: tuple[WitnessStep, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.process, s.rule) for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True, slots=True)
class _EmbedRule:
    source: tuple[int, int]
    top: int
    target: tuple[int, int]
    push: tuple[int, ...]
    rule: PdsRule
    matched: int


class _EmbeddingPds:
    """P_w(g) sincronizado con una palabra: el control lleva cuántos símbolos se consumieron.

    Cada símbolo emitido se empareja con su siguiente ocurrencia en la palabra.
    """

    def __init__(self, pds: Pds, word: Sequence[int]) -> None:
        self.pds = pds
        self.initial = (pds.initial, 0)
        self._next: list[dict[int, int]] = [{} for _ in range(len(word) + 1)]
        for j in range(len(word) - 1, -1, -1):
            self._next[j] = dict(self._next[j + 1])
            self._next[j][word[j]] = j

    def is_target(self, control: tuple[int, int]) -> bool:
        return control[0] in self.pds.finals

    def rules_from(self, control: tuple[int, int], top: int) -> Iterator[_EmbedRule]:
        state, j = control
        for rule in self.pds.rules_from(state, top):
            if rule.label is None:
                yield _EmbedRule(control, top, (rule.target, j), rule.push, rule, -1)
                continue
            k = self._next[j].get(rule.label)
            if k is not None:
                yield _EmbedRule(control, top, (rule.target, k + 1), rule.push, rule, k)


def _slave_run(
    inst: ParamInstance, result: CheckResult, component: int, word: Sequence[int]
) -> tuple[Pds, list[_EmbedRule]]:
    var, value = result.product.components[component]
    pds = pds_normalize(build_write_pds(inst.slave, var, value, result.alphabet))
    embedding = _EmbeddingPds(pds, word)
    found = pds_control_reachable(embedding, is_target=embedding.is_target)
    if not found.reachable:
        raise InternalError(
            "no run of the write system for "
            f"{result.readlangs[(var, value)].label(result.alphabet)} "
            "embeds into the consumed read word"
        )
    return pds, list(found.trace)


def reconstruct_witness(inst: ParamInstance, result: CheckResult) -> Witness:
    """Testigo concreto (maestro + n esclavos) de un veredicto REACHABLE."""
    if not result.reachable:
        raise ContractError("witness reconstruction needs a REACHABLE result")

    # clave de orden: (posición en la traza, prioridad, proceso, secuencia)
    events: list[tuple[tuple[int, int, int, int], WitnessStep]] = []
    consumed: dict[int, list[tuple[int, int]]] = {}
    accepted: dict[int, list[int]] = {}
    for position, rule in enumerate(result.product_trace):
        move = rule.move
        if move.kind is MoveKind.MASTER:
            assert move.rule is not None
            if move.rule.head:
                events.append(((position, 0, 0, 0), WitnessStep(0, move.rule.original)))
        elif move.kind is MoveKind.ACCEPTED_WRITE:
            accepted.setdefault(move.component, []).append(position)
        else:
            consumed.setdefault(move.component, []).append((move.symbol, position))

    process = 0
    for component in sorted(accepted):
        symbols = [s for s, _ in consumed.get(component, [])]
        positions = [p for _, p in consumed.get(component, [])]
        pds, run = _slave_run(inst, result, component, symbols)
        for write_position in accepted[component]:
            process += 1
            pending: list[PdsRule] = []
            seq = 0
            for embed in run:
                rule = embed.rule
                if not rule.head:
                    continue
                if rule.target in pds.finals:
                    anchor, priority, note = write_position, 0, "write"
                elif embed.matched >= 0:
                    anchor, priority = positions[embed.matched], 1
                    kind = result.alphabet.decode(rule.label)[0] if rule.label is not None else ""
                    note = "kill" if kind == "kill" else ""
                else:
                    pending.append(rule)
                    continue
                steps = [WitnessStep(process, internal.origin) for internal in pending]
                steps.append(WitnessStep(process, rule.origin, note))
                for step in steps:
                    events.append(((anchor, priority, process, seq), step))
                    seq += 1
                pending = []

    events.sort(key=lambda event: event[0])
    witness = Witness(process, tuple(step for _, step in events))
    if not replay(inst, witness.slave_count, witness.pairs()):
        raise InternalError("reconstructed witness does not replay")
    logger.info("Testigo: %d esclavos, %d pasos", witness.slave_count, len(witness))
    return witness


def _without(witness: Witness, process: int) -> Witness:
    steps = []
    for step in witness.steps:
        if step.process == process:
            continue
        shifted = step.process - 1 if step.process > process else step.process
        steps.append(WitnessStep(shifted, step.rule, step.note))
    return Witness(witness.slave_count - 1, tuple(steps))


def prune_witness(inst: ParamInstance, witness: Witness) -> Witness:
    """Quitar copias de esclavos mientras la traza siga siendo ejecutable."""
    current = witness
    for process in range(witness.slave_count, 0, -1):
        candidate = _without(current, process)
        if replay(inst, candidate.slave_count, candidate.pairs()):
            current = candidate
    if current.slave_count < witness.slave_count:
        logger.debug("Poda: %d -> %d esclavos", witness.slave_count, current.slave_count)
    return current


def minimize_witness(
    inst: ParamInstance, witness: Witness, config: Config | None = None
) -> Witness:
    """Buscar con el oráculo un testigo con menos esclavos.

    Se prueban n' = 0, 1, ... < n con profundidad igual a la longitud del
    testigo y la altura de pila que alcanza; ante INCONCLUSIVE se conserva
    el testigo original.
    """
    config = config or get_config()
    pairs = witness.pairs()
    bound = peak_stack(inst, witness.slave_count, pairs)
    for n in range(witness.slave_count):
        found = simulate(
            inst, n, len(pairs), bound, config.max_oracle_states
        )
        if found.outcome is Outcome.INCONCLUSIVE:
            logger.info("Minimización inconclusa con %d esclavos", n)
            return witness
        if found.reached:
            steps = tuple(_annotate(inst, process, rule) for process, rule in found.trace)
            return Witness(n, steps)
    return witness


def _annotate(inst: ParamInstance, process: int, rule_id: int) -> WitnessStep:
    if process > 0 and inst.slave.rule(rule_id).action.kind is ActionKind.WRITE:
        return WitnessStep(process, rule_id, "write")
    return WitnessStep(process, rule_id)
