"""Alfabeto de lectura R: un símbolo por valor leído y un KILL por variable."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..core.errors import InputError
from ..core.symbols import SymbolTable
from ..pushdown.model import Variable


def read_name(var: str, value: str) -> str:
    return f"r({var}={value})"


def kill_name(var: str) -> str:
    return f"KILL_{var}"


@dataclass(frozen=True)
class ReadAlphabet:
    """R = {r(g)} ∪ {KILL_i}; los ids viven en `symbols`."""

    symbols: SymbolTable
    variables: tuple[Variable, ...]
    reads: tuple[tuple[int, ...], ...]  # reads[var][value] -> id
    kills: tuple[int, ...]  # kills[var] -> id

    @classmethod
    def from_variables(cls, variables: Sequence[Variable]) -> ReadAlphabet:
        symbols = SymbolTable()
        reads = []
        for var in variables:
            reads.append(tuple(symbols.intern(read_name(var.name, v)) for v in var.values))
        kills = []
        for var in variables:
            name = kill_name(var.name)
            if name in symbols:
                raise InputError(f"variable name {var.name!r} clashes with a read symbol")
            kills.append(symbols.intern(name))
        return cls(symbols.freeze(), tuple(variables), tuple(reads), tuple(kills))

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(self.symbols.ids())

    def read(self, var: int, value: int) -> int:
        return self.reads[var][value]

    def kill(self, var: int) -> int:
        return self.kills[var]

    def decode(self, symbol: int) -> tuple[str, int, int]:
        """(`"read"`, var, valor) o (`"kill"`, var, -1)."""
        for var, ids in enumerate(self.reads):
            if symbol in ids:
                return ("read", var, ids.index(symbol))
        if symbol in self.kills:
            return ("kill", self.kills.index(symbol), -1)
        raise InputError(f"symbol id {symbol} is not a read symbol")

    def encode(self, names: Sequence[str]) -> list[int]:
        """Palabra por nombres externos."""
        return [self.symbols.lookup(n) for n in names]
