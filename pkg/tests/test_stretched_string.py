import numpy as np
import pytest

from core.errors import DomainError
from core.model_functions.presets import normalized_power_set
from core.offline_functions.stretched_string import (
    offline_power_static,
    solve_offline_fading,
    solve_offline_fading_batch,
    solve_offline_static,
    solve_offline_static_batch,
)

POWER_SET = normalized_power_set([1.0])


def random_schedule_bits(rng, initial_energy, harvests, gains):
    energy, total = initial_energy, 0.0
    for t in range(gains.size):
        power = energy if t == gains.size - 1 else rng.uniform() * energy
        total += float(np.log2(1.0 + gains[t] * power))
        energy -= power
        if t < harvests.size:
            energy += harvests[t]
    return total


def test_single_slot_bound():
    assert offline_power_static(9.0, [0.0, 0.0]) == pytest.approx(3.0)
    assert offline_power_static(9.0, []) == pytest.approx(9.0)
    assert offline_power_static(2.0, [10.0]) == pytest.approx(2.0)


def test_no_harvests_spread_evenly():
    solution = solve_offline_static(12.0, np.zeros(3), POWER_SET)
    np.testing.assert_allclose(solution.powers, [3.0, 3.0, 3.0, 3.0])
    assert solution.total_bits == pytest.approx(4 * 2.0)


def test_late_burst_is_not_borrowed():
    solution = solve_offline_static(6.0, [0.0, 0.0, 1000.0])
    np.testing.assert_allclose(solution.powers, [2.0, 2.0, 2.0, 1000.0])
    assert np.all(solution.margins >= -1e-9)


def test_static_schedule_beats_random_feasible_schedules(rng):
    for _ in range(30):
        horizon = int(rng.integers(2, 8))
        harvests = rng.uniform(0.0, 5.0, horizon - 1)
        initial = float(rng.uniform(0.0, 10.0))
        best = solve_offline_static(initial, harvests, POWER_SET)
        assert np.all(best.margins >= -1e-9)
        assert best.powers.sum() == pytest.approx(initial + harvests.sum())
        for _ in range(20):
            assert random_schedule_bits(rng, initial, harvests, np.ones(horizon)) <= best.total_bits + 1e-9


def test_unit_gain_water_filling_is_the_stretched_string(rng):
    harvests = rng.uniform(0.0, 4.0, (10, 5))
    initial = rng.uniform(0.0, 6.0, 10)
    static = solve_offline_static_batch(initial, harvests)
    fading, levels = solve_offline_fading_batch(initial, harvests, np.ones((10, 6)))
    np.testing.assert_allclose(fading, static, atol=1e-9)
    np.testing.assert_allclose(levels - 1.0, static, atol=1e-9)


def test_water_filling_skips_deep_fades():
    solution = solve_offline_fading(1.0, [0.0], [0.01, 1.0], POWER_SET)
    assert solution.powers[0] == pytest.approx(0.0)
    assert solution.powers[1] == pytest.approx(1.0)


def test_water_filling_beats_random_feasible_schedules(rng):
    for _ in range(20):
        horizon = int(rng.integers(2, 6))
        harvests = rng.uniform(0.0, 3.0, horizon - 1)
        gains = rng.choice([0.2, 1.0, 2.5], horizon)
        initial = float(rng.uniform(0.0, 6.0))
        best = solve_offline_fading(initial, harvests, gains, POWER_SET)
        assert np.all(best.margins >= -1e-9)
        for _ in range(20):
            assert random_schedule_bits(rng, initial, harvests, gains) <= best.total_bits + 1e-7


def test_rejects_negative_inputs():
    with pytest.raises(DomainError):
        offline_power_static(-1.0, [])
    with pytest.raises(DomainError):
        solve_offline_static_batch(1.0, [[-1.0]])
    with pytest.raises(DomainError):
        solve_offline_fading_batch(1.0, [[1.0]], [[1.0, 0.0]])


def test_static_powers_never_decrease_toward_the_deadline(rng):
    harvests = rng.choice([0.0, 256.0], p=[0.8, 0.2], size=(200, 49))
    powers = solve_offline_static_batch(0.0, harvests)
    assert np.all(np.diff(powers, axis=1) >= -1e-9)


def test_fading_water_levels_never_decrease_toward_the_deadline(rng):
    harvests = rng.choice([0.0, 3.0, 12.0], p=[0.6, 0.3, 0.1], size=(200, 29))
    gains = rng.exponential(1.0, size=(200, 30)) + 0.05
    _, levels = solve_offline_fading_batch(rng.uniform(0.0, 5.0, 200), harvests, gains)
    assert np.all(np.diff(levels, axis=1) >= -1e-9 * np.maximum(1.0, levels[:, 1:]))
