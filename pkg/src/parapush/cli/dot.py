"""Exportación de autómatas a Graphviz DOT."""

from __future__ import annotations

from ..automata.nfa import Nfa


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def nfa_to_dot(nfa: Nfa, name: str = "nfa") -> str:
    """Una arista por par de estados con las etiquetas agrupadas.

    Si un par está conectado por todo el alfabeto la etiqueta es `R`
    (abreviatura de "cualquier símbolo").
    """
    labels: dict[tuple[int, int], list[int]] = {}
    for src, sym, dst in nfa.transitions:
        labels.setdefault((src, dst), []).append(sym)

    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  __start__ [shape=point];"]
    lines.append(f"  __start__ -> q{nfa.initial};")
    for q in range(nfa.num_states):
        shape = "doublecircle" if q in nfa.finals else "circle"
        lines.append(f"  q{q} [shape={shape}];")
    for (src, dst), syms in sorted(labels.items()):
        if len(syms) == len(nfa.alphabet) and len(nfa.alphabet) > 1:
            text = "R"
        else:
            text = ", ".join(sorted(nfa.symbols.name(s) for s in syms))
        lines.append(f"  q{src} -> q{dst} [label={_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
