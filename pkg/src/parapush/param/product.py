"""PDS producto P̄: maestro, autómatas de lectura y valores globales.

Los controles se generan bajo demanda durante la saturación; nunca se
enumera el espacio completo.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, replace
from enum import Enum

from ..automata.nfa import Nfa
from ..core.errors import ContractError
from ..pushdown.convert import normalize_napds
from ..pushdown.model import ActionKind, NaPds, NaRule
from ..readlang.alphabet import ReadAlphabet
from ..readlang.closure import ReadLanguage
from .instance import ParamInstance

KILLED = -1


@dataclass(frozen=True, slots=True)
class ProductControl:
    """(control del maestro, un estado por autómata, un valor por variable)."""

    master: int
    states: tuple[int, ...]
    values: tuple[int, ...]


class MoveKind(str, Enum):
    MASTER = "master"
    NFA_READ = "nfa-read"
    NFA_KILL = "nfa-kill"
    ACCEPTED_WRITE = "accepted-write"


@dataclass(frozen=True, slots=True)
class ProductMove:
    """Qué representa una regla del producto."""

    kind: MoveKind
    component: int = -1
    var: int = -1
    value: int = -1
    symbol: int = -1
    rule: NaRule | None = None

    @property
    def is_write(self) -> bool:
        if self.kind is MoveKind.MASTER:
            return self.rule is not None and self.rule.action.kind is ActionKind.WRITE
        return self.kind in (MoveKind.NFA_KILL, MoveKind.ACCEPTED_WRITE)


@dataclass(frozen=True, slots=True)
class ProductRule:
    """Regla ⟨source, top⟩ → ⟨target, push⟩ del producto."""

    source: ProductControl
    top: int
    target: ProductControl
    push: tuple[int, ...]
    move: ProductMove


class ParamPds:
    """P̄ generado bajo demanda (protocolo `PushdownSystem`)."""

    def __init__(
        self,
        inst: ParamInstance,
        readlangs: Mapping[tuple[int, int], ReadLanguage],
        alphabet: ReadAlphabet | None = None,
    ) -> None:
        self.inst = inst
        self.alphabet = alphabet or ReadAlphabet.from_variables(inst.variables)
        self.master: NaPds = normalize_napds(inst.master)
        self.components = inst.value_pairs()
        missing = [pair for pair in self.components if pair not in readlangs]
        if missing:
            raise ContractError(f"missing read languages for {missing}")
        self.nfas: list[Nfa] = [readlangs[pair].nfa for pair in self.components]
        self.initial = ProductControl(
            self.master.initial,
            tuple(nfa.initial for nfa in self.nfas),
            tuple(var.initial for var in inst.variables),
        )

    @property
    def component_count(self) -> int:
        """1 + Σ|G_i| + k."""
        return 1 + len(self.components) + len(self.inst.variables)

    def is_target(self, control: ProductControl) -> bool:
        return control.master == self.inst.target

    def rules_from(self, control: ProductControl, top: int) -> Iterator[ProductRule]:
        values = control.values
        for rule in self.master.rules_from(control.master, top):
            action = rule.action
            new_values = values
            if action.kind is ActionKind.READ:
                if values[action.var] != action.value:
                    continue
            elif action.kind is ActionKind.WRITE:
                new_values = _set(values, action.var, action.value)
            yield ProductRule(
                control,
                top,
                replace(control, master=rule.target, values=new_values),
                rule.push,
                ProductMove(MoveKind.MASTER, rule=rule),
            )

        keep = (top,)
        for index, (var, value) in enumerate(self.components):
            nfa = self.nfas[index]
            state = control.states[index]
            if state in nfa.finals:
                if values[var] != value:
                    yield ProductRule(
                        control,
                        top,
                        replace(control, values=_set(values, var, value)),
                        keep,
                        ProductMove(MoveKind.ACCEPTED_WRITE, index, var, value),
                    )
                continue
            # lecturas de cualquier variable con valor vigente
            for read_var, current in enumerate(values):
                if current == KILLED:
                    continue
                symbol = self.alphabet.read(read_var, current)
                for nxt in nfa.successors(state, symbol):
                    if nxt == state:
                        continue
                    yield ProductRule(
                        control,
                        top,
                        replace(control, states=_set(control.states, index, nxt)),
                        keep,
                        ProductMove(MoveKind.NFA_READ, index, read_var, current, symbol),
                    )
            for killed in range(len(values)):
                symbol = self.alphabet.kill(killed)
                for nxt in nfa.successors(state, symbol):
                    target = ProductControl(
                        control.master,
                        _set(control.states, index, nxt),
                        _set(values, killed, KILLED),
                    )
                    if target == control:
                        continue
                    yield ProductRule(
                        control,
                        top,
                        target,
                        keep,
                        ProductMove(MoveKind.NFA_KILL, index, killed, KILLED, symbol),
                    )


def _set(values: tuple[int, ...], index: int, value: int) -> tuple[int, ...]:
    return values[:index] + (value,) + values[index + 1 :]


def build_param_pds(
    inst: ParamInstance,
    readlangs: Mapping[tuple[int, int], ReadLanguage],
    alphabet: ReadAlphabet | None = None,
) -> ParamPds:
    """Construir P̄ (perezoso) a partir de un lenguaje de lectura por par (variable, valor)."""
    return ParamPds(inst, readlangs, alphabet)
