"""Reportes JSON del comando `check`."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..automata.nfa import nfa_is_empty
from ..param.check import CheckResult
from ..param.instance import ParamInstance
from ..param.witness import Witness


class ReadLanguageSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: str
    value: str
    engine: str
    states: int
    empty: bool
    minimal_words: list[list[str]] | None = None


class WitnessStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    process: int
    rule: int
    text: str
    note: str = ""


class WitnessReport(BaseModel):
    slaves: int
    steps: list[WitnessStep] = Field(default_factory=list)


class CheckReport(BaseModel):
    """Veredicto, lenguajes de lectura, estadísticas y testigo opcional."""

    source: str
    engine: str
    verdict: str
    target: str
    read_languages: list[ReadLanguageSummary] = Field(default_factory=list)
    stats: dict[str, float | int] = Field(default_factory=dict)
    witness: WitnessReport | None = None


def witness_report(inst: ParamInstance, witness: Witness) -> WitnessReport:
    steps = []
    for step in witness.steps:
        process = inst.process(step.process)
        text = process.describe_rule(process.rule(step.rule))
        steps.append(WitnessStep(process=step.process, rule=step.rule, text=text, note=step.note))
    return WitnessReport(slaves=witness.slave_count, steps=steps)


def build_report(
    source: str,
    engine: str,
    inst: ParamInstance,
    result: CheckResult,
    witness: Witness | None = None,
) -> CheckReport:
    languages = []
    for (var, value), lang in sorted(result.readlangs.items()):
        variable = inst.variables[var]
        words = None
        if lang.words is not None:
            words = [result.alphabet.symbols.names(w) for w in lang.words]
        languages.append(
            ReadLanguageSummary(
                variable=variable.name,
                value=variable.values.name(value),
                engine=lang.engine,
                states=lang.nfa.num_states,
                empty=nfa_is_empty(lang.nfa),
                minimal_words=words,
            )
        )
    return CheckReport(
        source=source,
        engine=engine,
        verdict=result.verdict.value,
        target=inst.target_name,
        read_languages=languages,
        stats=dict(result.stats),
        witness=witness_report(inst, witness) if witness else None,
    )
