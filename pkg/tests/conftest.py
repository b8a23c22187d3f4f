"""Fixtures compartidas."""

import os
from collections.abc import Iterator
from pathlib import Path

import pytest

from parapush.config import CONFIG_ENV, ENV_PREFIX, set_config


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Sin archivo de usuario ni variables de entorno; la configuración global se restablece."""
    for name in list(os.environ):
        if name.startswith(ENV_PREFIX):
            monkeypatch.delenv(name)
    monkeypatch.setenv(CONFIG_ENV, str(tmp_path / "missing.yaml"))
    set_config(None)
    yield
    set_config(None)
