"""parapush - Alcanzabilidad parametrizada para redes de PDS no atómicos."""

__version__ = "0.1.0"
