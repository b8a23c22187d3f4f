"""Configuración global: límites de recursos de cada etapa."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

import yaml
from platformdirs import user_config_dir

from .core.errors import InputError

logger = logging.getLogger(__name__)

ENV_PREFIX = "PARAPUSH_"
CONFIG_ENV = "PARAPUSH_CONFIG"


@dataclass(frozen=True)
class Config:
    """Configuración inmutable de límites."""

    # automata
    max_det_states: int = 1_000_000

    # readlang
    max_antichain: int = 100_000
    max_read_memo: int = 1_000_000

    # er
    max_marked: int = 8
    max_types: int = 109_600
    max_er_states: int = 10_000

    # pushdown / param
    max_saturation: int = 5_000_000

    # oracle
    max_oracle_states: int = 200_000

    # Paralelismo en la construcción de lenguajes de lectura
    workers: int = 1

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise InputError(f"config value {f.name} must be a positive integer, got {value!r}")

    @classmethod
    def default_path(cls) -> Path:
        """Ruta del archivo de configuración del usuario."""
        override = os.getenv(CONFIG_ENV)
        if override:
            return Path(override)
        return Path(user_config_dir("parapush")) / "config.yaml"

    @classmethod
    def from_file(cls, path: Path, base: Config | None = None) -> Config:
        """Crear configuración desde un YAML (claves = nombres de campo)."""
        base = base or cls()
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as e:
            raise InputError(f"invalid config file: {e}", source=str(path)) from e
        if not isinstance(data, dict):
            raise InputError("config file must contain a mapping", source=str(path))
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}", source=str(path))
        logger.debug("Configuración leída de %s", path)
        return base.with_overrides(**data)

    @classmethod
    def from_env(cls, path: Path | None = None) -> Config:
        """Crear configuración: defaults, archivo YAML y variables de entorno."""
        config = cls()
        path = path or cls.default_path()
        if path.is_file():
            config = cls.from_file(path, config)

        overrides: dict[str, Any] = {}
        for f in fields(cls):
            raw = os.getenv(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            try:
                overrides[f.name] = int(raw)
            except ValueError:
                raise InputError(
                    f"environment variable {ENV_PREFIX + f.name.upper()} must be an integer"
                ) from None
        return config.with_overrides(**overrides)

    def with_overrides(self, **caps: int | None) -> Config:
        """Copia con los valores dados (None se ignora)."""
        changes = {k: v for k, v in caps.items() if v is not None}
        if not changes:
            return self
        try:
            return replace(self, **changes)
        except TypeError as e:
            raise InputError(f"unknown config option: {e}") from e

    def to_dict(self) -> dict[str, int]:
        """Convertir a diccionario."""
        return {f.name: getattr(self, f.name) for f in fields(self)}


# Instancia global
_config: Config | None = None


def get_config() -> Config:
    """Obtener instancia de configuración (singleton)."""
    global _config
    if _config is None:
        _config = Config.from_env()
    return _config


def set_config(config: Config | None) -> None:
    """Establecer configuración (None restablece la carga perezosa)."""
    global _config
    _config = config
