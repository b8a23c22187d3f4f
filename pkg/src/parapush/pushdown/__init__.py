"""Sistemas de pila, saturación y conversión a gramáticas."""

from .convert import normalize_napds, pds_normalize, pds_to_cfg
from .model import (
    BOTTOM,
    BOTTOM_ID,
    INTERNAL,
    Action,
    ActionKind,
    NaPds,
    NaRule,
    Pds,
    PdsConfig,
    PdsRule,
    PushdownSystem,
    Variable,
    apply_rule,
    replay_trace,
)
from .saturation import ReachabilityResult, pds_control_reachable

__all__ = [
    "BOTTOM",
    "BOTTOM_ID",
    "INTERNAL",
    "Action",
    "ActionKind",
    "NaPds",
    "NaRule",
    "Pds",
    "PdsConfig",
    "PdsRule",
    "PushdownSystem",
    "ReachabilityResult",
    "Variable",
    "apply_rule",
    "normalize_napds",
    "pds_control_reachable",
    "pds_normalize",
    "pds_to_cfg",
    "replay_trace",
]
