"""Tests para el simulador explícito."""

import random

import pytest

from parapush.core.errors import InputError
from parapush.oracle.simulate import (
    NpdsConfig,
    Outcome,
    fire,
    format_trace,
    parse_trace,
    peak_stack,
    replay,
    run_trace,
    simulate,
)

from .builders import load, random_instance

# esclavo 1: 1 -> ok -> go; esclavo 2: 2 -> go -> f
RELAY_TRACE = [
    (1, 0),
    (0, 0),
    (2, 3),
    (0, 1),
    (0, 2),
    (1, 1),
    (1, 2),
    (2, 4),
    (2, 5),
    (0, 3),
]


class TestSimulate:
    """Tests de la búsqueda acotada."""

    def test_relay_with_two_slaves(self) -> None:
        """Con dos esclavos el objetivo se alcanza en 10 pasos."""
        inst = load("relay.napds")
        result = simulate(inst, 2, depth=12)
        assert result.outcome is Outcome.REACHED
        assert len(result.trace) == 10
        assert replay(inst, 2, result.trace)

    def test_relay_with_one_slave_is_exhausted(self) -> None:
        """Con un esclavo la búsqueda se agota sin alcanzar el objetivo."""
        result = simulate(load("relay.napds"), 1, depth=30)
        assert result.outcome is Outcome.NOT_REACHED
        assert not result.truncated

    def test_zero_slaves(self) -> None:
        """Sin esclavos el maestro no avanza."""
        result = simulate(load("relay.napds"), 0, depth=20)
        assert not result.reached

    def test_stack_count(self) -> None:
        """Un esclavo basta cuando la pila cabe en la cota."""
        inst = load("stack-count.napds")
        result = simulate(inst, 1, depth=10, stack_bound=4)
        assert result.reached
        assert peak_stack(inst, 1, result.trace) == 3

    def test_stack_bound_truncates(self) -> None:
        """Con cota 1 no cabe ningún push y la búsqueda queda truncada."""
        result = simulate(load("stack-count.napds"), 1, depth=10, stack_bound=1)
        assert result.outcome is Outcome.NOT_REACHED
        assert result.truncated

    def test_state_cap_is_inconclusive(self) -> None:
        """Superar el límite de configuraciones es INCONCLUSIVE."""
        result = simulate(load("relay.napds"), 2, depth=12, max_states=3)
        assert result.outcome is Outcome.INCONCLUSIVE
        assert result.truncated

    def test_symmetry_keeps_outcome(self) -> None:
        """La reducción por simetría no cambia el resultado."""
        inst = load("relay.napds")
        with_sym = simulate(inst, 2, depth=12)
        without = simulate(inst, 2, depth=12, symmetry=False)
        assert with_sym.outcome is without.outcome is Outcome.REACHED
        assert len(with_sym.trace) == len(without.trace)

    def test_invalid_arguments(self) -> None:
        """Argumentos negativos son error de entrada."""
        inst = load("relay.napds")
        with pytest.raises(InputError):
            simulate(inst, -1, depth=3)
        with pytest.raises(InputError):
            simulate(inst, 1, depth=3, stack_bound=0)


class TestTraces:
    """Tests de ejecución y formato de trazas."""

    def test_replay_known_trace(self) -> None:
        """La traza escrita a mano se ejecuta."""
        assert replay(load("relay.napds"), 2, RELAY_TRACE)

    def test_disabled_step(self) -> None:
        """Un paso no habilitado detiene la ejecución."""
        inst = load("relay.napds")
        assert run_trace(inst, 2, [(0, 0)]) is None
        assert not replay(inst, 2, RELAY_TRACE[:-1])

    def test_out_of_range(self) -> None:
        """Procesos o reglas inexistentes son error de entrada."""
        inst = load("relay.napds")
        with pytest.raises(InputError):
            run_trace(inst, 1, [(2, 0)])
        with pytest.raises(InputError):
            run_trace(inst, 1, [(1, 17)])

    def test_fire_updates_values(self) -> None:
        """Una escritura cambia el valor global."""
        inst = load("relay.napds")
        start = NpdsConfig.initial(inst, 1)
        nxt = fire(start, 1, inst.slave.rule(0))
        assert nxt is not None
        assert nxt.values == (inst.variables[0].value_id("1"),)
        assert fire(start, 0, inst.master.rule(0)) is None

    def test_canonical_ignores_slave_order(self) -> None:
        """Permutar esclavos no cambia la clave canónica."""
        a = NpdsConfig((0, 1, 2), ((0,), (0,), (0,)), (0,))
        b = NpdsConfig((0, 2, 1), ((0,), (0,), (0,)), (0,))
        assert a.canonical() == b.canonical()
        assert a != b

    def test_format_and_parse(self) -> None:
        """El formato de trazas se vuelve a leer; `#` es comentario."""
        text = "# relay\n" + format_trace(RELAY_TRACE[:2]) + "\n"
        assert parse_trace(text) == RELAY_TRACE[:2]

    def test_parse_malformed(self) -> None:
        """Una línea mal formada indica su número."""
        with pytest.raises(InputError) as info:
            parse_trace("0 1\n0 x\n")
        assert info.value.line == 2


class TestOracleProperties:
    """Propiedades de la búsqueda y de las trazas."""

    def test_monotone_in_slaves_and_depth(self) -> None:
        """Más esclavos o más profundidad no pierden el objetivo."""
        inst = load("relay.napds")
        assert simulate(inst, 2, depth=12).reached
        assert simulate(inst, 3, depth=12).reached
        assert simulate(inst, 2, depth=14).reached

    def test_monotone_on_random_instances(self) -> None:
        """Lo alcanzado con un esclavo se alcanza con dos."""
        rng = random.Random(53)
        for _ in range(40):
            inst = random_instance(rng)
            if not simulate(inst, 1, depth=6, stack_bound=3, max_states=2_000).reached:
                continue
            for n, depth in ((2, 6), (1, 8)):
                result = simulate(inst, n, depth=depth, stack_bound=3, max_states=2_000)
                assert result.reached or result.outcome is Outcome.INCONCLUSIVE

    def test_dedup_keeps_reachability(self) -> None:
        """Sin deduplicar se alcanza lo mismo cuando ninguna búsqueda se corta."""
        rng = random.Random(59)
        compared = 0
        for _ in range(40):
            inst = random_instance(rng)
            runs = [
                simulate(inst, 1, depth=4, stack_bound=3, max_states=2_000, dedup=dedup)
                for dedup in (True, False)
            ]
            if any(r.outcome is Outcome.INCONCLUSIVE for r in runs):
                continue
            assert runs[0].reached == runs[1].reached
            compared += 1
        assert compared > 0

    def test_slave_permutation_replays(self) -> None:
        """Renombrar esclavos en una traza no cambia su resultado."""
        inst = load("relay.napds")
        swapped = [(3 - p if p else 0, rule) for p, rule in RELAY_TRACE]
        assert replay(inst, 2, swapped)
        spread = [({1: 3, 2: 1}.get(p, p), rule) for p, rule in RELAY_TRACE]
        assert replay(inst, 3, spread)
