"""Verificación parametrizada por el PDS producto."""

from .check import CheckResult, Verdict, build_read_languages, check
from .instance import ParamInstance
from .product import (
    KILLED,
    MoveKind,
    ParamPds,
    ProductControl,
    ProductMove,
    ProductRule,
    build_param_pds,
)
from .witness import (
    Witness,
    WitnessStep,
    minimize_witness,
    prune_witness,
    reconstruct_witness,
)

__all__ = [
    "KILLED",
    "CheckResult",
    "MoveKind",
    "ParamInstance",
    "ParamPds",
    "ProductControl",
    "ProductMove",
    "ProductRule",
    "Verdict",
    "Witness",
    "WitnessStep",
    "build_param_pds",
    "build_read_languages",
    "check",
    "minimize_witness",
    "prune_witness",
    "reconstruct_witness",
]
