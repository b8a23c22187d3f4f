"""Gramática G^x: palabras w con x ∈ T(w)."""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

from ..automata.cfg import Cfg, GrammarBuilder, NonTerm, Term, productive_nonterminals
from ..core.errors import ContractError
from .spine import MarkedAlphabet, MarkedSymbol, marked_alphabet, type_nfa


def typed_grammar(
    g: Cfg, x: Sequence[MarkedSymbol], alphabet: MarkedAlphabet | None = None
) -> Cfg:
    """Producciones sobre A, A@q y A_eps.

    A conserva la gramática original (rendimiento a la izquierda del camino),
    A_eps borra lo que queda a la derecha y A@q sigue el camino marcado
    mientras el autómata del tipo está en q. (A,B,C,1) continúa en B y borra
    C; (A,B,C,2) conserva B y continúa en C; A@q → a solo si (A,a) lleva a
    un estado final.
    """
    if not g.cnf:
        raise ContractError("typed_grammar requires a CNF grammar")
    alphabet = alphabet or marked_alphabet(g)
    nfa = type_nfa(x, alphabet)
    names = g.nonterminals
    builder = GrammarBuilder(g.terminals, g.alphabet)

    def path_nt(a: int, q: int) -> NonTerm:
        return builder.nonterminal(f"{names.name(a)}@{q}")

    start = path_nt(g.start, nfa.initial)
    productive = productive_nonterminals(g)

    # 1 y 2. copia de la gramática (binarias y terminales)
    for prod in g.productions:
        builder.add(names.name(prod.head), [
            builder.nonterminal(names.name(s.id)) if isinstance(s, NonTerm) else s
            for s in prod.body
        ])
    # 3. borrado
    for a in sorted(productive):
        builder.add(f"{names.name(a)}_eps", [])

    binary: dict[int, list[tuple[int, int]]] = {}
    for head, b, c in g.binary_rules():
        binary.setdefault(head, []).append((b, c))
    terminal: dict[int, list[int]] = {}
    for head, a in g.terminal_rules():
        terminal.setdefault(head, []).append(a)

    seen = {(g.start, nfa.initial)}
    queue = deque(seen)
    while queue:
        a, q = queue.popleft()
        head = path_nt(a, q)
        for b, c in binary.get(a, ()):
            # 4. el camino baja a la izquierda y se borra la derecha
            if c in productive:
                for q2 in nfa.successors(q, alphabet.id(MarkedSymbol.binary(a, b, c, 1))):
                    builder.add(head, [path_nt(b, q2), f"{names.name(c)}_eps"])
                    if (b, q2) not in seen:
                        seen.add((b, q2))
                        queue.append((b, q2))
            # 5. el camino baja a la derecha y se conserva la izquierda
            for q2 in nfa.successors(q, alphabet.id(MarkedSymbol.binary(a, b, c, 2))):
                builder.add(head, [names.name(b), path_nt(c, q2)])
                if (c, q2) not in seen:
                    seen.add((c, q2))
                    queue.append((c, q2))
        # 6. fin del camino
        for t in terminal.get(a, ()):
            mark = alphabet.id(MarkedSymbol.terminal_mark(a, t))
            if nfa.successors(q, mark) & nfa.finals:
                builder.add(head, [Term(t)])
    return builder.build(start)
