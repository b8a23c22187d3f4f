"""PDS de escritura P_w(g) de un esclavo."""

from __future__ import annotations

import logging

from ..core.errors import InputError
from ..pushdown.model import ActionKind, NaPds, Pds, PdsRule
from .alphabet import ReadAlphabet

logger = logging.getLogger(__name__)

FINAL_CONTROL = "⊤written"


def build_write_pds(slave: NaPds, var: int, value: int, alphabet: ReadAlphabet) -> Pds:
    """P_w(g): el esclavo con un control final nuevo alcanzado al escribir g.

    Las escrituras se reemplazan por KILL de su variable, las lecturas
    emiten r(g') y las reglas internas emiten ε. Cada escritura de `value`
    en `var` agrega además una regla ε hacia el control final; su `origin`
    es la regla de escritura.
    """
    if not 0 <= var < len(slave.variables):
        raise InputError(f"unknown variable id {var}")
    if not 0 <= value < len(slave.variables[var].values):
        raise InputError(f"value id {value} not declared for variable {slave.variables[var].name}")

    controls = slave.controls.copy()
    final = controls.intern(FINAL_CONTROL)
    rules: list[PdsRule] = []
    for rule in slave.rules:
        action = rule.action
        label: int | None = None
        if action.kind is ActionKind.READ:
            label = alphabet.read(action.var, action.value)
        elif action.kind is ActionKind.WRITE:
            label = alphabet.kill(action.var)
            if action.var == var and action.value == value:
                rules.append(
                    PdsRule(
                        id=len(rules),
                        source=rule.source,
                        top=rule.top,
                        label=None,
                        target=final,
                        push=(rule.top,),
                        origin=rule.original,
                        head=rule.head,
                    )
                )
        rules.append(
            PdsRule(
                id=len(rules),
                source=rule.source,
                top=rule.top,
                label=label,
                target=rule.target,
                push=rule.push,
                origin=rule.original,
                head=rule.head,
            )
        )
    return Pds(
        controls=controls.freeze(),
        stack=slave.stack,
        outputs=alphabet.symbols,
        alphabet=alphabet.alphabet,
        rules=tuple(rules),
        initial=slave.initial,
        finals=frozenset([final]),
    )
