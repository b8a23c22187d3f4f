"""Sistemas de pila: naPDS con variables globales y PDS etiquetados."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol

from ..core.errors import ContractError, InputError
from ..core.symbols import SymbolTable

BOTTOM = "$"
BOTTOM_ID = 0


class ActionKind(str, Enum):
    """Tipo de acción sobre las variables globales."""

    INTERNAL = "internal"
    READ = "read"
    WRITE = "write"


@dataclass(frozen=True, slots=True)
class Action:
    """Acción de una regla: interna, `read var=value` o `write var=value`."""

    kind: ActionKind = ActionKind.INTERNAL
    var: int = -1
    value: int = -1

    @classmethod
    def read(cls, var: int, value: int) -> Action:
        return cls(ActionKind.READ, var, value)

    @classmethod
    def write(cls, var: int, value: int) -> Action:
        return cls(ActionKind.WRITE, var, value)

    @property
    def is_internal(self) -> bool:
        return self.kind is ActionKind.INTERNAL


INTERNAL = Action()


@dataclass(frozen=True)
class Variable:
    """Variable global con su alfabeto de valores y valor inicial."""

    name: str
    values: SymbolTable
    initial: int

    def __post_init__(self) -> None:
        if not 0 <= self.initial < len(self.values):
            raise InputError(f"initial value of {self.name} not in its alphabet")

    def value_id(self, name: str) -> int:
        ident = self.values.get(name)
        if ident is None:
            raise InputError(f"value {name!r} not declared for variable {self.name}")
        return ident


class RuleLike(Protocol):
    """Lo que la saturación necesita de una regla."""

    @property
    def target(self) -> Any: ...

    @property
    def push(self) -> tuple[int, ...]: ...


class PushdownSystem(Protocol):
    """Sistema explorable por saturación (posiblemente generado bajo demanda)."""

    @property
    def initial(self) -> Any: ...

    def rules_from(self, control: Any, top: int) -> Iterable[Any]: ...


@dataclass(frozen=True, slots=True)
class NaRule:
    """Regla ⟨source, top⟩ --action--> ⟨target, push⟩ de un naPDS.

    `origin` es el id de la regla original cuando la regla proviene de
    partir un push largo; solo la primera regla de la cadena tiene `head`.
    """

    id: int
    source: int
    top: int
    action: Action
    target: int
    push: tuple[int, ...]
    origin: int = -1
    head: bool = True

    @property
    def original(self) -> int:
        return self.id if self.origin < 0 else self.origin


def check_bottom_discipline(top: int, push: Sequence[int], what: str) -> None:
    """El fondo de pila no se apila ni se desapila."""
    if top == BOTTOM_ID:
        if not push or push[-1] != BOTTOM_ID or BOTTOM_ID in push[:-1]:
            raise InputError(
                f"{what}: a rule reading the bottom symbol must push a word ending in "
                f"{BOTTOM} with no other {BOTTOM}"
            )
    elif BOTTOM_ID in push:
        raise InputError(f"{what}: the bottom symbol {BOTTOM} may not be pushed")


def _index_rules(rules: Iterable[Any]) -> dict[tuple[int, int], tuple[Any, ...]]:
    index: dict[tuple[int, int], list[Any]] = {}
    for rule in rules:
        index.setdefault((rule.source, rule.top), []).append(rule)
    return {k: tuple(v) for k, v in index.items()}


@dataclass(frozen=True)
class NaPds:
    """PDS no atómico: reglas con acciones sobre k variables globales."""

    name: str
    controls: SymbolTable
    stack: SymbolTable
    variables: tuple[Variable, ...]
    rules: tuple[NaRule, ...]
    initial: int
    _index: dict[tuple[int, int], tuple[NaRule, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.stack.get(BOTTOM) != BOTTOM_ID:
            raise ContractError(f"stack alphabet must declare {BOTTOM} with id {BOTTOM_ID}")
        if not 0 <= self.initial < len(self.controls):
            raise InputError(f"{self.name}: initial control not declared")
        for rule in self.rules:
            what = f"{self.name} rule {rule.id}"
            for q in (rule.source, rule.target):
                if not 0 <= q < len(self.controls):
                    raise InputError(f"{what}: undeclared control {q}")
            for s in (rule.top, *rule.push):
                if not 0 <= s < len(self.stack):
                    raise InputError(f"{what}: undeclared stack symbol {s}")
            check_bottom_discipline(rule.top, rule.push, what)
            if not rule.action.is_internal:
                if not 0 <= rule.action.var < len(self.variables):
                    raise InputError(f"{what}: undeclared variable {rule.action.var}")
                var = self.variables[rule.action.var]
                if not 0 <= rule.action.value < len(var.values):
                    raise InputError(f"{what}: value not in the alphabet of {var.name}")
        object.__setattr__(self, "_index", _index_rules(self.rules))

    def rules_from(self, control: int, top: int) -> tuple[NaRule, ...]:
        return self._index.get((control, top), ())

    def rule(self, rule_id: int) -> NaRule:
        if not 0 <= rule_id < len(self.rules) or self.rules[rule_id].id != rule_id:
            raise InputError(f"{self.name}: unknown rule id {rule_id}")
        return self.rules[rule_id]

    def describe_rule(self, rule: NaRule) -> str:
        """Texto `q a -> q' w [read|write var=v]`."""
        push = " ".join(self.stack.names(rule.push)) or "eps"
        text = (
            f"{self.controls.name(rule.source)} {self.stack.name(rule.top)} -> "
            f"{self.controls.name(rule.target)} {push}"
        )
        if not rule.action.is_internal:
            var = self.variables[rule.action.var]
            text += f" {rule.action.kind.value} {var.name}={var.values.name(rule.action.value)}"
        return text

    def __getstate__(self) -> dict[str, object]:
        state = dict(self.__dict__)
        state.pop("_index", None)
        return state

    def __setstate__(self, state: dict[str, object]) -> None:
        for key, value in state.items():
            object.__setattr__(self, key, value)
        object.__setattr__(self, "_index", _index_rules(self.rules))


@dataclass(frozen=True, slots=True)
class PdsRule:
    """Regla ⟨source, top⟩ --label--> ⟨target, push⟩; `label=None` es ε."""

    id: int
    source: int
    top: int
    label: int | None
    target: int
    push: tuple[int, ...]
    origin: int = -1
    head: bool = True


@dataclass(frozen=True)
class Pds:
    """PDS con salida sobre `outputs` y controles finales."""

    controls: SymbolTable
    stack: SymbolTable
    outputs: SymbolTable
    alphabet: frozenset[int]
    rules: tuple[PdsRule, ...]
    initial: int
    finals: frozenset[int]
    _index: dict[tuple[int, int], tuple[PdsRule, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.stack.get(BOTTOM) != BOTTOM_ID:
            raise ContractError(f"stack alphabet must declare {BOTTOM} with id {BOTTOM_ID}")
        for rule in self.rules:
            check_bottom_discipline(rule.top, rule.push, f"rule {rule.id}")
            if rule.label is not None and rule.label not in self.alphabet:
                raise ContractError(f"rule {rule.id}: label not in output alphabet")
        object.__setattr__(self, "_index", _index_rules(self.rules))

    def rules_from(self, control: int, top: int) -> tuple[PdsRule, ...]:
        return self._index.get((control, top), ())

    def is_normalized(self) -> bool:
        return all(len(r.push) <= 2 for r in self.rules)

    def __getstate__(self) -> dict[str, object]:
        state = dict(self.__dict__)
        state.pop("_index", None)
        return state

    def __setstate__(self, state: dict[str, object]) -> None:
        for key, value in state.items():
            object.__setattr__(self, key, value)
        object.__setattr__(self, "_index", _index_rules(self.rules))


@dataclass(frozen=True, slots=True)
class PdsConfig:
    """Configuración ⟨control, pila⟩ con la cima primero."""

    control: Hashable
    stack: tuple[int, ...] = (BOTTOM_ID,)

    @property
    def top(self) -> int:
        return self.stack[0]


def apply_rule(config: PdsConfig, rule: Any) -> PdsConfig | None:
    """Aplicar una regla; None si no está habilitada."""
    if config.control != rule.source or not config.stack or config.stack[0] != rule.top:
        return None
    return PdsConfig(rule.target, tuple(rule.push) + config.stack[1:])


def replay_trace(system: PushdownSystem, trace: Sequence[Any]) -> PdsConfig | None:
    """Reproducir reglas desde ⟨initial, $⟩; None si algún paso falla."""
    config: PdsConfig | None = PdsConfig(system.initial)
    for rule in trace:
        assert config is not None
        config = apply_rule(config, rule)
        if config is None:
            return None
    return config
