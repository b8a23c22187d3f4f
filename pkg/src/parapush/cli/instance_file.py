"""Formato de texto de instancias (maestro, esclavo y variables).

Ejemplo::

    var g : 0 1 ok init 0

    process master
      initial: m0
      target: m1
      rule m0 $ -> m1 $ read g=ok
    end

    process slave
      initial: s0
      rule s0 $ -> s1 $ write g=ok
    end

`controls:` y `stack:` son opcionales; sin ellos los símbolos se declaran
en orden de aparición. `$` es el fondo de pila y siempre está declarado.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

from ..core.errors import InputError
from ..core.symbols import SymbolTable
from ..param.instance import ParamInstance
from ..pushdown.model import (
    BOTTOM,
    INTERNAL,
    Action,
    NaPds,
    NaRule,
    Variable,
    check_bottom_discipline,
)

_TOKEN = re.compile(r"\S+")
_KINDS = ("master", "slave")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class InstanceSyntaxError(InputError):
    """Todos los problemas encontrados en un archivo de instancia."""

    def __init__(self, diagnostics: list[Diagnostic], source: str) -> None:
        self.diagnostics = diagnostics
        first = diagnostics[0]
        message = first.message
        if len(diagnostics) > 1:
            message += f" (and {len(diagnostics) - 1} more)"
        super().__init__(message, line=first.line, column=first.column, source=source)


@dataclass
class _Draft:
    kind: str
    line: int
    controls: SymbolTable = field(default_factory=SymbolTable)
    stack: SymbolTable = field(default_factory=lambda: SymbolTable([BOTTOM]))
    fixed_controls: bool = False
    fixed_stack: bool = False
    initial: int | None = None
    target: int | None = None
    rules: list[NaRule] = field(default_factory=list)
    rule_lines: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class InstanceFile:
    """Instancia parseada con la línea de cada regla."""

    instance: ParamInstance
    source: str
    rule_lines: dict[tuple[str, int], int]

    def where(self, process: str, rule_id: int) -> str:
        line = self.rule_lines.get((process, rule_id))
        return f"{self.source}:{line}" if line else self.source


class _Parser:
    def __init__(self, text: str, source: str) -> None:
        self.text = text
        self.source = source
        self.diagnostics: list[Diagnostic] = []
        self.variables: list[Variable] = []
        self.drafts: dict[str, _Draft] = {}

    def error(self, line: int, column: int, message: str) -> None:
        self.diagnostics.append(Diagnostic(line, column, message))

    def lines(self) -> Iterator[tuple[int, list[tuple[int, str]]]]:
        for number, raw in enumerate(self.text.splitlines(), 1):
            code = raw.split("#", 1)[0]
            tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(code)]
            if tokens:
                yield number, tokens

    def parse(self) -> InstanceFile:
        current: _Draft | None = None
        for number, tokens in self.lines():
            col, head = tokens[0]
            if current is None:
                if head == "var":
                    self.parse_var(number, tokens)
                elif head == "process":
                    current = self.open_process(number, tokens)
                else:
                    self.error(number, col, f"expected 'var' or 'process', got {head!r}")
                continue
            if head == "end":
                current = None
            elif head == "rule":
                self.parse_rule(current, number, tokens)
            elif head.endswith(":"):
                self.parse_header(current, number, tokens)
            else:
                self.error(number, col, f"unexpected {head!r} inside a process block")
        if current is not None:
            self.error(current.line, 1, f"process {current.kind} is missing 'end'")
        for kind in _KINDS:
            if kind not in self.drafts:
                self.error(1, 1, f"no {kind} process declared")
        if not self.variables:
            self.error(1, 1, "no variable declared")
        return self.finish()

    def parse_var(self, number: int, tokens: list[tuple[int, str]]) -> None:
        words = [t for _, t in tokens]
        if len(words) < 4 or words[2] != ":":
            self.error(number, 1, "expected 'var <name> : <values...> [init <value>]'")
            return
        name = words[1]
        if any(v.name == name for v in self.variables):
            self.error(number, tokens[1][0], f"variable {name!r} declared twice")
            return
        values = words[3:]
        init = None
        if "init" in values:
            at = values.index("init")
            if at != len(values) - 2:
                self.error(number, tokens[3 + at][0], "'init' must be followed by one value")
                return
            init = values[-1]
            values = values[:at]
        if not values or len(set(values)) != len(values):
            self.error(number, tokens[1][0], f"variable {name!r} needs distinct values")
            return
        table = SymbolTable(values).freeze()
        if init is not None and init not in table:
            self.error(number, tokens[-1][0], f"initial value {init!r} not among the values")
            return
        self.variables.append(Variable(name, table, table.lookup(init) if init else 0))

    def open_process(self, number: int, tokens: list[tuple[int, str]]) -> _Draft | None:
        if len(tokens) != 2 or tokens[1][1] not in _KINDS:
            self.error(number, 1, "expected 'process master' or 'process slave'")
            return _Draft("invalid", number)
        kind = tokens[1][1]
        if kind in self.drafts:
            self.error(number, tokens[1][0], f"process {kind} declared twice")
        draft = _Draft(kind, number)
        self.drafts[kind] = draft
        return draft

    def symbol(
        self, table: SymbolTable, fixed: bool, name: str, what: str, number: int, col: int
    ) -> int:
        if fixed:
            ident = table.get(name)
            if ident is None:
                self.error(number, col, f"{what} {name!r} not declared")
                return 0
            return ident
        return table.intern(name)

    def parse_header(self, draft: _Draft, number: int, tokens: list[tuple[int, str]]) -> None:
        col, key = tokens[0]
        args = tokens[1:]
        if key == "controls:":
            if draft.fixed_controls or len(draft.controls):
                self.error(number, col, "'controls:' must come first and only once")
                return
            for c, name in args:
                if name in draft.controls:
                    self.error(number, c, f"control {name!r} listed twice")
                draft.controls.intern(name)
            draft.fixed_controls = True
        elif key == "stack:":
            if draft.fixed_stack or len(draft.stack) > 1:
                self.error(number, col, "'stack:' must precede the rules and appear once")
                return
            for c, name in args:
                if name == BOTTOM:
                    self.error(number, c, f"{BOTTOM} is implicit and cannot be listed")
                elif name in draft.stack:
                    self.error(number, c, f"stack symbol {name!r} listed twice")
                else:
                    draft.stack.intern(name)
            draft.fixed_stack = True
        elif key in ("initial:", "target:"):
            if len(args) != 1:
                self.error(number, col, f"'{key}' takes exactly one control")
                return
            c, name = args[0]
            ident = self.symbol(draft.controls, draft.fixed_controls, name, "control", number, c)
            if key == "initial:":
                draft.initial = ident
            elif draft.kind == "slave":
                self.error(number, col, "slave processes have no target")
            else:
                draft.target = ident
        else:
            self.error(number, col, f"unknown header {key!r}")

    def parse_action(self, number: int, tokens: list[tuple[int, str]]) -> Action | None:
        (_, kind), (col, assignment) = tokens
        name, sep, value = assignment.partition("=")
        if not sep:
            self.error(number, col, f"expected <var>=<value>, got {assignment!r}")
            return None
        for index, var in enumerate(self.variables):
            if var.name == name:
                ident = var.values.get(value)
                if ident is None:
                    self.error(number, col, f"value {value!r} not declared for variable {name}")
                    return None
                return Action.read(index, ident) if kind == "read" else Action.write(index, ident)
        self.error(number, col, f"unknown variable {name!r}")
        return None

    def parse_rule(self, draft: _Draft, number: int, tokens: list[tuple[int, str]]) -> None:
        words = [t for _, t in tokens]
        if len(words) < 6 or words[3] != "->":
            self.error(number, 1, "expected 'rule <q> <a> -> <q'> <w>|eps [read|write v=x]'")
            return
        action = INTERNAL
        body = tokens[5:]
        if len(tokens) >= 8 and words[-2] in ("read", "write"):
            parsed = self.parse_action(number, tokens[-2:])
            if parsed is None:
                return
            action = parsed
            body = tokens[5:-2]
        if not body:
            self.error(number, tokens[4][0], "missing push word (use 'eps' for none)")
            return
        controls, stack = draft.controls, draft.stack
        src = self.symbol(controls, draft.fixed_controls, words[1], "control", number, tokens[1][0])
        top = self.symbol(stack, draft.fixed_stack, words[2], "stack symbol", number, tokens[2][0])
        dst = self.symbol(controls, draft.fixed_controls, words[4], "control", number, tokens[4][0])
        if [w for _, w in body] == ["eps"]:
            push: tuple[int, ...] = ()
        else:
            push = tuple(
                self.symbol(stack, draft.fixed_stack, w, "stack symbol", number, c) for c, w in body
            )
        try:
            check_bottom_discipline(top, push, "rule")
        except InputError as e:
            self.error(number, tokens[2][0], e.message)
            return
        draft.rules.append(NaRule(len(draft.rules), src, top, action, dst, push))
        draft.rule_lines.append(number)

    def finish(self) -> InstanceFile:
        for draft in self.drafts.values():
            if draft.initial is None:
                self.error(draft.line, 1, f"process {draft.kind} has no 'initial:'")
            if draft.kind == "master" and draft.target is None:
                self.error(draft.line, 1, "the master needs a 'target:' control")
        if self.diagnostics:
            self.diagnostics.sort(key=lambda d: (d.line, d.column))
            raise InstanceSyntaxError(self.diagnostics, self.source)

        variables = tuple(self.variables)
        processes: dict[str, NaPds] = {}
        for kind in _KINDS:
            draft = self.drafts[kind]
            assert draft.initial is not None
            try:
                processes[kind] = NaPds(
                    kind,
                    draft.controls.freeze(),
                    draft.stack.freeze(),
                    variables,
                    tuple(draft.rules),
                    draft.initial,
                )
            except InputError as e:
                raise InputError(e.message, line=draft.line, source=self.source) from e
        assert self.drafts["master"].target is not None
        instance = ParamInstance(
            processes["master"], processes["slave"], variables, self.drafts["master"].target
        )
        lines = {
            (kind, i): line
            for kind in _KINDS
            for i, line in enumerate(self.drafts[kind].rule_lines)
        }
        return InstanceFile(instance, self.source, lines)


def parse_instance_file(text: str, source: str = "<instance>") -> InstanceFile:
    """Parsear con ubicaciones; lanza `InstanceSyntaxError` con todos los diagnósticos."""
    return _Parser(text, source).parse()


def parse_instance(text: str, source: str = "<instance>") -> ParamInstance:
    return parse_instance_file(text, source).instance


def load_instance(path: Path) -> InstanceFile:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read instance: {e.strerror}", source=str(path)) from e
    return parse_instance_file(text, str(path))


def format_instance(inst: ParamInstance) -> str:
    """Texto que vuelve a parsearse a la misma instancia."""
    out: list[str] = []
    for var in inst.variables:
        values = " ".join(var.values)
        out.append(f"var {var.name} : {values} init {var.values.name(var.initial)}")
    for process in (inst.master, inst.slave):
        out.append("")
        out.append(f"process {process.name}")
        out.append(f"  controls: {' '.join(process.controls)}")
        extra = [s for s in process.stack if s != BOTTOM]
        if extra:
            out.append(f"  stack: {' '.join(extra)}")
        out.append(f"  initial: {process.controls.name(process.initial)}")
        if process is inst.master:
            out.append(f"  target: {inst.target_name}")
        for rule in process.rules:
            out.append(f"  rule {process.describe_rule(rule)}")
        out.append("end")
    return "\n".join(out) + "\n"
