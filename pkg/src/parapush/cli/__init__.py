"""Interfaz de línea de comandos y formatos de texto."""

from .dot import nfa_to_dot
from .generate import generate_instance
from .instance_file import (
    Diagnostic,
    InstanceFile,
    InstanceSyntaxError,
    format_instance,
    load_instance,
    parse_instance,
    parse_instance_file,
)

__all__ = [
    "Diagnostic",
    "InstanceFile",
    "InstanceSyntaxError",
    "format_instance",
    "generate_instance",
    "load_instance",
    "nfa_to_dot",
    "parse_instance",
    "parse_instance_file",
]
