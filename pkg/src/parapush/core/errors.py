"""Errores de la herramienta y sus códigos de salida."""

from __future__ import annotations


class ParapushError(Exception):
    """Error base de parapush."""

    exit_code = 1


class InputError(ParapushError):
    """Entrada de usuario inválida (sintaxis, símbolos, disciplina de pila)."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        source: str | None = None,
    ) -> None:
        """Inicializar con ubicación opcional."""
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self.location_prefix() + message)

    def location_prefix(self) -> str:
        """Prefijo `fuente:línea:columna: ` si hay ubicación."""
        if self.line is None:
            return f"{self.source}: " if self.source else ""
        parts = [self.source or "<input>", str(self.line)]
        if self.column is not None:
            parts.append(str(self.column))
        return ":".join(parts) + ": "


class ResourceLimitError(ParapushError):
    """Se superó un límite configurado."""

    exit_code = 3

    def __init__(self, limit: str, value: int, detail: str = "", stage: str | None = None) -> None:
        """Inicializar con el nombre del límite y su valor."""
        self.limit = limit
        self.value = value
        self.detail = detail
        self.stage = stage
        text = f"resource limit {limit}={value} exceeded"
        if detail:
            text += f" ({detail})"
        if stage:
            text = f"[{stage}] {text}"
        super().__init__(text)

    def with_stage(self, stage: str) -> ResourceLimitError:
        """Copia etiquetada con la etapa del pipeline."""
        if self.stage:
            return self
        return ResourceLimitError(self.limit, self.value, self.detail, stage=stage)


class ContractError(ParapushError):
    """Un llamador interno violó una precondición."""

    pass


class PreconditionViolation(ParapushError):
    """Una propiedad asumida por el usuario resultó falsa."""

    exit_code = 2


class InternalError(ParapushError):
    """Error interno: indica un bug, nunca un error de usuario."""

    pass
