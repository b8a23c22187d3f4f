"""Oráculo: simulación explícita acotada y formato de trazas."""

from .simulate import (
    NpdsConfig,
    Outcome,
    SimulationResult,
    format_trace,
    parse_trace,
    replay,
    simulate,
)

__all__ = [
    "NpdsConfig",
    "Outcome",
    "SimulationResult",
    "format_trace",
    "parse_trace",
    "replay",
    "simulate",
]
