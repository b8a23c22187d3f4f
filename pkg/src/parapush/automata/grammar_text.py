"""Formato de texto de gramáticas (una producción por línea)."""

from __future__ import annotations

from ..core.errors import InputError
from ..core.symbols import SymbolTable
from .cfg import Cfg, GrammarBuilder, NonTerm

EPSILON = "eps"
ARROW = "->"


def parse_grammar(
    text: str, terminals: SymbolTable | None = None, source: str = "<grammar>"
) -> Cfg:
    """Leer `A -> B C`, `A -> a`, `A -> eps`; `#` inicia comentario.

    La cabeza de la primera producción es el símbolo inicial. Son no
    terminales los tokens que aparecen como cabeza; el resto son terminales.
    """
    lines: list[tuple[int, str, list[str]]] = []
    heads: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 3 or tokens[1] != ARROW:
            raise InputError(
                f"expected '<head> -> <body>', got {line!r}", line=lineno, source=source
            )
        if ARROW in tokens[2:]:
            raise InputError("one production per line", line=lineno, source=source)
        body = tokens[2:]
        if EPSILON in body and len(body) > 1:
            raise InputError(f"'{EPSILON}' must be the whole body", line=lineno, source=source)
        lines.append((lineno, tokens[0], [] if body == [EPSILON] else body))
        heads.append(tokens[0])
    if not lines:
        raise InputError("grammar has no productions", source=source)

    head_set = set(heads)
    builder = GrammarBuilder(terminals if terminals is not None else SymbolTable())
    start = builder.nonterminal(heads[0])
    for _, head, body in lines:
        refs = [builder.nonterminal(t) if t in head_set else builder.terminal(t) for t in body]
        builder.add(head, refs)
    return builder.build(start)


def format_grammar(g: Cfg) -> str:
    """Imprimir en el formato de `parse_grammar` (inicio primero)."""
    by_head = g.by_head()
    order = [g.start] + [h for h in g.nonterminals.ids() if h != g.start]
    lines: list[str] = []
    if g.cnf and g.start_nullable:
        lines.append(f"{g.nonterminals.name(g.start)} {ARROW} {EPSILON}")
    for head in order:
        for prod in by_head.get(head, []):
            body = " ".join(
                g.nonterminals.name(s.id) if isinstance(s, NonTerm) else g.terminals.name(s.id)
                for s in prod.body
            )
            lines.append(f"{g.nonterminals.name(head)} {ARROW} {body or EPSILON}")
    return "\n".join(lines) + "\n"
