"""Core: tablas de símbolos y jerarquía de errores."""

from .errors import (
    ContractError,
    InputError,
    InternalError,
    ParapushError,
    PreconditionViolation,
    ResourceLimitError,
)
from .symbols import SymbolTable

__all__ = [
    "ContractError",
    "InputError",
    "InternalError",
    "ParapushError",
    "PreconditionViolation",
    "ResourceLimitError",
    "SymbolTable",
]
