"""Instancias difíciles a partir de dos gramáticas.

El esclavo elige una rama: la rama 1 escribe una palabra de L(g1) símbolo a
símbolo esperando un `!` tras cada uno; la rama 2 la lee contra L(g2)
respondiendo `!`, y al final escribe `done`; las ramas i ≥ 3 solo pasan el
testigo i-1 → i. La rama 1 arranca cuando ve el valor `copies`, de modo que
toda la cadena de ramas tiene que haberse ejecutado. El maestro tiene una
sola regla: leer `done`.
"""

from __future__ import annotations

from ..automata.cfg import Cfg, NonTerm, Symbol
from ..core.errors import InputError
from .instance_file import parse_instance

VAR = "g"
DONE = "done"
ACK = "!"
END = "f"


def _stack_name(side: int, g: Cfg, sym: Symbol) -> str:
    if isinstance(sym, NonTerm):
        return f"N{side}_{g.nonterminals.name(sym.id)}"
    return f"T{side}_{g.terminals.name(sym.id)}"


def _stack_symbols(side: int, g: Cfg) -> list[str]:
    names = {_stack_name(side, g, NonTerm(g.start))}
    names.update(_stack_name(side, g, s) for p in g.productions for s in p.body)
    return ["$", *sorted(names)]


def _value(g: Cfg, terminal: int) -> str:
    return f"'{g.terminals.name(terminal)}'"


def _derivation_rules(side: int, g: Cfg, loop: str) -> list[str]:
    """Derivación por la izquierda con la pila: expandir no terminales."""
    rules = []
    for prod in g.productions:
        head = f"N{side}_{g.nonterminals.name(prod.head)}"
        body = " ".join(_stack_name(side, g, s) for s in prod.body) or "eps"
        rules.append(f"rule {loop} {head} -> {loop} {body}")
    return rules


def generate_instance(g1: Cfg, g2: Cfg, copies: int = 3) -> str:
    """Texto de instancia: el maestro llega al objetivo si L(g1) ∩ L(g2) ≠ ∅.

    El texto se valida con el parser antes de devolverlo.
    """
    if copies < 2:
        raise InputError("the generator needs at least 2 slave copies")
    terminals = sorted(
        {_value(g1, t) for t in g1.alphabet} | {_value(g2, t) for t in g2.alphabet}
    )
    tokens = [str(i) for i in range(copies + 1)]
    values = [*tokens, *terminals, ACK, END, DONE]
    out = [f"# generado desde dos gramáticas, {copies} copias", ""]
    out.append(f"var {VAR} : {' '.join(values)} init 0")
    out += [
        "",
        "process master",
        "  initial: m0",
        "  target: m1",
        f"  rule m0 $ -> m1 $ read {VAR}={DONE}",
        "end",
        "",
        "process slave",
        "  initial: s0",
    ]
    rules: list[str] = []

    # rama 1: escribe la palabra de g1
    start1 = f"N1_{g1.nonterminals.name(g1.start)}"
    rules += [
        f"rule s0 $ -> a0 $ write {VAR}=1",
        f"rule a0 $ -> a1 $ read {VAR}={copies}",
        f"rule a1 $ -> w1 {start1} $",
    ]
    rules += _derivation_rules(1, g1, "w1")
    for t in sorted(g1.alphabet):
        name = g1.terminals.name(t)
        rules.append(f"rule w1 T1_{name} -> w1.{name} eps write {VAR}={_value(g1, t)}")
        for top in _stack_symbols(1, g1):
            rules.append(f"rule w1.{name} {top} -> w1 {top} read {VAR}={ACK}")
    rules.append(f"rule w1 $ -> a2 $ write {VAR}={END}")

    # rama 2: lee contra g2
    start2 = f"N2_{g2.nonterminals.name(g2.start)}"
    rules += [
        f"rule s0 $ -> b0 $ read {VAR}=1",
        f"rule b0 $ -> b1 $ write {VAR}=2",
        f"rule b1 $ -> r2 {start2} $",
    ]
    rules += _derivation_rules(2, g2, "r2")
    for t in sorted(g2.alphabet):
        name = g2.terminals.name(t)
        rules.append(f"rule r2 T2_{name} -> r2.{name} eps read {VAR}={_value(g2, t)}")
        for top in _stack_symbols(2, g2):
            rules.append(f"rule r2.{name} {top} -> r2 {top} write {VAR}={ACK}")
    rules += [
        f"rule r2 $ -> b2 $ read {VAR}={END}",
        f"rule b2 $ -> b3 $ write {VAR}={DONE}",
    ]

    # ramas i ≥ 3: relevo del testigo
    for i in range(3, copies + 1):
        rules += [
            f"rule s0 $ -> c{i} $ read {VAR}={i - 1}",
            f"rule c{i} $ -> d{i} $ write {VAR}={i}",
        ]

    out += [f"  {rule}" for rule in rules]
    out.append("end")
    text = "\n".join(out) + "\n"
    parse_instance(text, "<generated>")
    return text
