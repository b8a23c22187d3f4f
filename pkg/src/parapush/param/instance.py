"""Instancia del problema de alcanzabilidad parametrizada."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.errors import InputError
from ..pushdown.model import NaPds, Variable


@dataclass(frozen=True)
class ParamInstance:
    """Maestro con control objetivo, esclavo replicable y variables compartidas."""

    master: NaPds
    slave: NaPds
    variables: tuple[Variable, ...]
    target: int

    def __post_init__(self) -> None:
        if not self.variables:
            raise InputError("at least one shared variable is required")
        for process in (self.master, self.slave):
            if process.variables != self.variables:
                raise InputError(f"{process.name} does not agree on the variable declarations")
        if not 0 <= self.target < len(self.master.controls):
            raise InputError("the target must be a control of the master")

    @property
    def target_name(self) -> str:
        return self.master.controls.name(self.target)

    def process(self, index: int) -> NaPds:
        """Proceso 0 es el maestro; el resto son copias del esclavo."""
        return self.master if index == 0 else self.slave

    def value_pairs(self) -> list[tuple[int, int]]:
        """Pares (variable, valor) en orden variable-mayor."""
        return [(i, v) for i, var in enumerate(self.variables) for v in range(len(var.values))]
