"""Tabla de símbolos internados."""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import ContractError, InputError


class SymbolTable:
    """Biyección entre nombres externos e ids densos desde 0.

    Se llena durante la construcción y se congela antes de publicar el valor
    que la usa; a partir de ahí es inmutable y se puede compartir.
    """

    __slots__ = ("_names", "_ids", "_frozen")

    def __init__(self, names: Iterable[str] = ()) -> None:
        """Inicializar internando `names` en orden."""
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        self._frozen = False
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        """Id de `name`, creándolo si no existe."""
        existing = self._ids.get(name)
        if existing is not None:
            return existing
        if self._frozen:
            raise ContractError(f"symbol table is frozen; cannot intern {name!r}")
        ident = len(self._names)
        self._names.append(name)
        self._ids[name] = ident
        return ident

    def lookup(self, name: str) -> int:
        """Id de un nombre ya internado."""
        try:
            return self._ids[name]
        except KeyError:
            raise InputError(f"unknown symbol {name!r}") from None

    def get(self, name: str) -> int | None:
        """Id de `name` o None."""
        return self._ids.get(name)

    def name(self, ident: int) -> str:
        """Nombre externo de un id."""
        if not 0 <= ident < len(self._names):
            raise InputError(f"unknown symbol id {ident}")
        return self._names[ident]

    def names(self, idents: Iterable[int]) -> list[str]:
        """Nombres de una secuencia de ids."""
        return [self.name(i) for i in idents]

    def freeze(self) -> SymbolTable:
        """Congelar la tabla (no admite más símbolos)."""
        self._frozen = True
        return self

    def copy(self) -> SymbolTable:
        """Copia no congelada."""
        return SymbolTable(self._names)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def ids(self) -> range:
        return range(len(self._names))

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._names == other._names

    def __hash__(self) -> int:
        # solo tablas congeladas
        if not self._frozen:
            raise TypeError("unhashable: symbol table is not frozen")
        return hash(tuple(self._names))

    def __repr__(self) -> str:
        return f"SymbolTable({self._names!r})"

    def __getstate__(self) -> tuple[list[str], bool]:
        return self._names, self._frozen

    def __setstate__(self, state: tuple[list[str], bool]) -> None:
        names, frozen = state
        self._names = list(names)
        self._ids = {n: i for i, n in enumerate(self._names)}
        self._frozen = frozen
