"""Verificación parametrizada: lenguajes de lectura, producto y saturación."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial

from ..config import Config, get_config
from ..core.errors import InputError, ResourceLimitError
from ..pushdown.model import NaPds
from ..pushdown.saturation import pds_control_reachable
from ..readlang.alphabet import ReadAlphabet
from ..readlang.closure import ReadLanguage, read_language_nfa, read_language_nfa_er
from .instance import ParamInstance
from .product import ParamPds, ProductRule, build_param_pds

logger = logging.getLogger(__name__)

ENGINES = ("closure", "er")

ReadLanguages = dict[tuple[int, int], ReadLanguage]


class Verdict(str, Enum):
    REACHABLE = "REACHABLE"
    UNREACHABLE = "UNREACHABLE"


@dataclass
class CheckResult:
    """Veredicto más los artefactos intermedios."""

    verdict: Verdict
    product_trace: list[ProductRule]
    readlangs: ReadLanguages
    alphabet: ReadAlphabet
    product: ParamPds
    stats: dict[str, float | int] = field(default_factory=dict)

    @property
    def reachable(self) -> bool:
        return self.verdict is Verdict.REACHABLE


def _engine(name: str) -> Callable[..., ReadLanguage]:
    if name == "closure":
        return read_language_nfa
    if name == "er":
        return read_language_nfa_er
    raise InputError(f"unknown engine {name!r} (expected one of {', '.join(ENGINES)})")


def _build_one(
    slave: NaPds,
    alphabet: ReadAlphabet,
    engine: str,
    config: Config,
    pair: tuple[int, int],
) -> ReadLanguage:
    var, value = pair
    try:
        return _engine(engine)(slave, var, value, alphabet, config)
    except ResourceLimitError as err:
        label = f"{alphabet.variables[var].name}={alphabet.variables[var].values.name(value)}"
        raise err.with_stage(f"read-language {label}") from err


def build_read_languages(
    inst: ParamInstance,
    engine: str = "closure",
    config: Config | None = None,
    alphabet: ReadAlphabet | None = None,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> ReadLanguages:
    """Un autómata L_w(g) por cada par (variable, valor), o solo por `pairs`.

    Con `config.workers > 1` los lenguajes se calculan en procesos aparte.
    """
    _engine(engine)
    config = config or get_config()
    alphabet = alphabet or ReadAlphabet.from_variables(inst.variables)
    pairs = list(pairs) if pairs is not None else inst.value_pairs()
    job = partial(_build_one, inst.slave, alphabet, engine, config)
    if config.workers > 1 and len(pairs) > 1:
        logger.info("Lenguajes de lectura en %d procesos", config.workers)
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(job, pairs))
    else:
        results = [job(pair) for pair in pairs]
    return dict(zip(pairs, results, strict=True))


def check(
    inst: ParamInstance, engine: str = "closure", config: Config | None = None
) -> CheckResult:
    """¿Existe n tal que el maestro alcanza el control objetivo con n esclavos?"""
    config = config or get_config()
    alphabet = ReadAlphabet.from_variables(inst.variables)
    started = time.perf_counter()
    readlangs = build_read_languages(inst, engine, config, alphabet)
    built = time.perf_counter()

    product = build_param_pds(inst, readlangs, alphabet)
    try:
        result = pds_control_reachable(
            product, is_target=product.is_target, max_transitions=config.max_saturation
        )
    except ResourceLimitError as err:
        raise err.with_stage("product saturation") from err
    finished = time.perf_counter()

    verdict = Verdict.REACHABLE if result.reachable else Verdict.UNREACHABLE
    stats: dict[str, float | int] = {
        "read_language_states": sum(r.nfa.num_states for r in readlangs.values()),
        "product_components": product.component_count,
        "saturation_transitions": result.transitions,
        "product_trace_length": len(result.trace),
        "readlang_seconds": round(built - started, 4),
        "saturation_seconds": round(finished - built, 4),
    }
    logger.info("Veredicto %s (%s)", verdict.value, engine)
    logger.debug("Estadísticas: %s", stats)
    return CheckResult(verdict, list(result.trace), readlangs, alphabet, product, stats)
