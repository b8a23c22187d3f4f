"""Línea de comandos de parapush."""

from __future__ import annotations

import functools
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .. import __version__
from ..automata.cfg import cfg_to_cnf
from ..automata.grammar_text import parse_grammar
from ..config import Config, set_config
from ..core.errors import InputError, InternalError, ParapushError
from ..er.construct import ErConstruction
from ..oracle.simulate import Outcome, format_trace, parse_trace, replay, simulate
from ..param.check import ENGINES, build_read_languages
from ..param.check import check as run_check
from ..param.instance import ParamInstance
from ..param.witness import Witness, minimize_witness, prune_witness, reconstruct_witness
from ..readlang.alphabet import ReadAlphabet
from .dot import nfa_to_dot
from .generate import generate_instance
from .instance_file import load_instance
from .report import build_report

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

F = TypeVar("F", bound=Callable[..., Any])

_INSTANCE = click.Path(exists=True, dir_okay=False, path_type=Path)
_OUTPUT = click.Path(dir_okay=False, writable=True, path_type=Path)


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    root = logging.getLogger("parapush")
    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)
    root.addHandler(RichHandler(console=err_console, show_path=False, rich_tracebacks=True))
    root.setLevel(level)


def _handle_errors(func: F) -> F:
    """Traducir excepciones a mensajes de una línea y códigos de salida."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ParapushError as e:
            logger.debug("Detalle del error", exc_info=True)
            kind = "internal error" if isinstance(e, InternalError) else "error"
            err_console.print(f"[bold red]{kind}:[/] {e}", markup=True, highlight=False)
            for diagnostic in getattr(e, "diagnostics", [])[1:]:
                err_console.print(f"  {diagnostic}", highlight=False)
            raise SystemExit(e.exit_code) from e

    return wrapper  # type: ignore[return-value]


def _cap_options(func: F) -> F:
    options = [
        click.option("--max-types", type=click.IntRange(min=1), help="Spine types for er."),
        click.option("--max-states", type=click.IntRange(min=1), help="Worklist states for er."),
        click.option("--max-antichain", type=click.IntRange(min=1), help="Minimal read words."),
        click.option(
            "--max-read-memo", type=click.IntRange(min=1), help="Memoized read subproblems."
        ),
        click.option("--max-marked", type=click.IntRange(min=1), help="Marked symbols for types."),
        click.option("--workers", type=click.IntRange(min=1), help="Processes for read languages."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(ctx: click.Context, caps: dict[str, int | None]) -> Config:
    base: Config = ctx.obj
    config = base.with_overrides(
        max_types=caps.get("max_types"),
        max_er_states=caps.get("max_states"),
        max_antichain=caps.get("max_antichain"),
        max_read_memo=caps.get("max_read_memo"),
        max_marked=caps.get("max_marked"),
        workers=caps.get("workers"),
    )
    set_config(config)
    return config


@click.group()
@click.version_option(__version__, prog_name="parapush")
@click.option("-v", "--verbose", count=True, help="-v INFO, -vv DEBUG.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="YAML file with resource limits.",
)
@click.pass_context
@_handle_errors
def cli(ctx: click.Context, verbose: int, config_path: Path | None) -> None:
    """Alcanzabilidad parametrizada de redes de PDS con lecturas y escrituras no atómicas."""
    _setup_logging(verbose)
    ctx.obj = Config.from_env(config_path)


def _print_witness(inst: ParamInstance, witness: Witness) -> None:
    console.print(f"witness with n = {witness.slave_count} slave(s), {len(witness)} steps")
    table = Table(show_header=True, header_style="bold")
    table.add_column("#", justify="right")
    table.add_column("process")
    table.add_column("rule")
    table.add_column("")
    for number, step in enumerate(witness.steps, 1):
        process = inst.process(step.process)
        who = "master" if step.process == 0 else f"slave {step.process}"
        note = f"({step.note})" if step.note == "kill" else ""
        text = f"{step.rule}: {process.describe_rule(process.rule(step.rule))}"
        table.add_row(str(number), who, text, note)
    console.print(table)


@cli.command()
@click.argument("instance", type=_INSTANCE)
@click.option("--engine", type=click.Choice(ENGINES), default="closure", show_default=True)
@click.option("--witness", "want_witness", is_flag=True, help="Reconstruct a concrete run.")
@click.option("--minimize/--no-minimize", default=True, show_default=True)
@click.option("--json", "json_path", type=_OUTPUT, help="Write a JSON report.")
@click.option("--trace", "trace_path", type=_OUTPUT, help="Write the witness trace.")
@_cap_options
@click.pass_context
@_handle_errors
def check(
    ctx: click.Context,
    instance: Path,
    engine: str,
    want_witness: bool,
    minimize: bool,
    json_path: Path | None,
    trace_path: Path | None,
    **caps: int | None,
) -> None:
    """Decidir si el maestro alcanza su objetivo para algún número de esclavos."""
    config = _config(ctx, caps)
    parsed = load_instance(instance)
    inst = parsed.instance
    result = run_check(inst, engine, config)
    style = "bold green" if result.reachable else "bold yellow"
    console.print(f"[{style}]{result.verdict.value}[/]")

    witness = None
    if result.reachable and (want_witness or trace_path or json_path):
        witness = prune_witness(inst, reconstruct_witness(inst, result))
        if minimize:
            witness = minimize_witness(inst, witness, config)
        if want_witness:
            _print_witness(inst, witness)
        if trace_path:
            trace_path.write_text(format_trace(witness.pairs()), encoding="utf-8")
    if json_path:
        report = build_report(str(instance), engine, inst, result, witness)
        json_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")


@cli.command(name="simulate")
@click.argument("instance", type=_INSTANCE)
@click.option("-n", "--slaves", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--depth", type=click.IntRange(min=0), default=20, show_default=True)
@click.option("--stack-bound", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--max-oracle-states", type=click.IntRange(min=1))
@click.option("--symmetry/--no-symmetry", default=True, show_default=True)
@click.option("--replay", "replay_path", type=_INSTANCE, help="Check a trace file instead.")
@click.option("--trace", "trace_path", type=_OUTPUT, help="Write the trace found.")
@click.pass_context
@_handle_errors
def simulate_cmd(
    ctx: click.Context,
    instance: Path,
    slaves: int,
    depth: int,
    stack_bound: int,
    max_oracle_states: int | None,
    symmetry: bool,
    replay_path: Path | None,
    trace_path: Path | None,
) -> None:
    """Búsqueda explícita acotada con un número fijo de esclavos."""
    config = _config(ctx, {})
    inst = load_instance(instance).instance
    if replay_path:
        trace = parse_trace(replay_path.read_text(encoding="utf-8"), str(replay_path))
        ok = replay(inst, slaves, trace)
        console.print("REPLAY-OK" if ok else "[bold red]REPLAY-FAILED[/]")
        return
    cap = max_oracle_states or config.max_oracle_states
    result = simulate(inst, slaves, depth, stack_bound, cap, symmetry=symmetry)
    if result.outcome is Outcome.REACHED:
        console.print(f"[bold green]REACHED[/] in {len(result.trace)} steps")
        for process, rule in result.trace:
            who = "master" if process == 0 else f"slave {process}"
            text = inst.process(process).describe_rule(inst.process(process).rule(rule))
            console.print(f"  {who}: {text}", highlight=False, soft_wrap=True)
        if trace_path:
            trace_path.write_text(format_trace(result.trace), encoding="utf-8")
    elif result.outcome is Outcome.INCONCLUSIVE:
        console.print(f"[bold red]INCONCLUSIVE[/] after {result.explored} configurations")
    else:
        console.print("[bold yellow]NOT-REACHED-WITHIN-BOUND[/]")
        if not result.truncated:
            console.print(f"search exhausted after {result.explored} configurations")


@cli.command()
@click.argument("instance", type=_INSTANCE)
@click.option("--var", "var_name", help="Only this variable.")
@click.option("--value", "value_name", help="Only this value.")
@click.option("--engine", type=click.Choice(ENGINES), default="closure", show_default=True)
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    help="Directory for one DOT file per value (default: stdout).",
)
@_cap_options
@click.pass_context
@_handle_errors
def readlang(
    ctx: click.Context,
    instance: Path,
    var_name: str | None,
    value_name: str | None,
    engine: str,
    out_dir: Path | None,
    **caps: int | None,
) -> None:
    """Autómatas de los lenguajes de lectura en DOT."""
    config = _config(ctx, caps)
    inst = load_instance(instance).instance
    pairs = [
        (i, v)
        for i, v in inst.value_pairs()
        if (var_name is None or inst.variables[i].name == var_name)
        and (value_name is None or inst.variables[i].values.name(v) == value_name)
    ]
    if not pairs:
        raise InputError("no (variable, value) pair matches the selection")
    alphabet = ReadAlphabet.from_variables(inst.variables)
    langs = build_read_languages(inst, engine, config, alphabet, pairs)
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for pair in pairs:
        lang = langs[pair]
        label = lang.label(alphabet)
        dot = nfa_to_dot(lang.nfa, f"L_w({label})")
        if out_dir:
            path = out_dir / f"{label.replace('=', '-')}.dot"
            path.write_text(dot, encoding="utf-8")
            console.print(f"{label}: {lang.nfa.num_states} states -> {path}", highlight=False)
        else:
            click.echo(dot, nl=False)


@cli.command()
@click.argument("grammar", type=_INSTANCE)
@click.option("--out", "out_path", type=_OUTPUT, help="Write the DOT here (default: stdout).")
@_cap_options
@click.pass_context
@_handle_errors
def er(
    ctx: click.Context, grammar: Path, out_path: Path | None, **caps: int | None
) -> None:
    """Autómata de una gramática muy degenerada por tipos de espina."""
    config = _config(ctx, caps)
    g = cfg_to_cnf(parse_grammar(grammar.read_text(encoding="utf-8"), source=str(grammar)))
    result = ErConstruction(g, config).run()
    err_console.print(
        f"{result.types} spine types, {result.worklist_nfa.num_states} worklist states, "
        f"{result.nfa.num_states} states",
        highlight=False,
    )
    dot = nfa_to_dot(result.nfa, grammar.stem)
    if out_path:
        out_path.write_text(dot, encoding="utf-8")
    else:
        click.echo(dot, nl=False)


@cli.command()
@click.argument("grammar1", type=_INSTANCE)
@click.argument("grammar2", type=_INSTANCE)
@click.option("--copies", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("-o", "--out", "out_path", type=_OUTPUT)
@_handle_errors
def gen(grammar1: Path, grammar2: Path, copies: int, out_path: Path | None) -> None:
    """Instancia a partir de dos gramáticas (relevo entre copias del esclavo)."""
    g1 = parse_grammar(grammar1.read_text(encoding="utf-8"), source=str(grammar1))
    g2 = parse_grammar(grammar2.read_text(encoding="utf-8"), source=str(grammar2))
    text = generate_instance(g1, g2, copies)
    if out_path:
        out_path.write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def run() -> int:
    """Ejecutar la CLI y devolver el código de salida."""
    try:
        result = cli.main(prog_name="parapush", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    except SystemExit as e:
        return int(e.code or 0)
    return result if isinstance(result, int) else 0
