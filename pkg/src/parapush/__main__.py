"""Punto de entrada principal."""

import sys


def main() -> int:
    """Ejecutar la CLI."""
    from .cli.app import run

    return run()


if __name__ == "__main__":
    sys.exit(main())
