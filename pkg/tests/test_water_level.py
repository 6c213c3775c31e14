import numpy as np
import pytest

from core.errors import DomainError
from core.model_classes.markov_chain import ChannelModel, HarvestModel
from core.offline_functions.water_level import (
    Inversion,
    LookaheadMeans,
    expected_water_level,
    invert_water_level,
    lookahead_means,
    water_level_approximation_gap,
    water_level_energy,
)

NO_FUTURE = LookaheadMeans(np.array([]), np.array([]))


def unit_gain_means(harvests):
    harvests = np.asarray(harvests, dtype=float)
    return LookaheadMeans(harvests, np.ones_like(harvests))


def test_last_slot_level_is_energy_plus_floor():
    result = expected_water_level(4.0, 0.5, NO_FUTURE)
    assert result.level == pytest.approx(6.0)
    assert not result.capped


def test_unit_gain_level_matches_the_static_share():
    result = expected_water_level(9.0, 1.0, unit_gain_means([0.0, 0.0]))
    assert result.level - 1.0 == pytest.approx(3.0, abs=1e-9)
    result = expected_water_level(10.0, 1.0, unit_gain_means([1.0, 2.0, 3.0]))
    assert result.level - 1.0 == pytest.approx((10.0 + 6.0) / 4, abs=1e-9)


def test_level_is_capped_by_the_current_slot():
    result = expected_water_level(3.0, 1.0, unit_gain_means([0.0, 100.0]))
    assert result.capped
    assert result.level == pytest.approx(4.0)


def test_window_minimum_is_never_above_the_whole_horizon():
    means = unit_gain_means([0.0, 100.0])
    exact = expected_water_level(3.0, 1.0, means, exact_min=True)
    assert exact.level == pytest.approx(2.5, abs=1e-9)
    assert water_level_approximation_gap(3.0, 1.0, means) == pytest.approx(1.5, abs=1e-9)


def test_random_fixed_point_residuals(rng):
    for _ in range(200):
        depth = int(rng.integers(0, 8))
        means = LookaheadMeans(rng.uniform(0.0, 5.0, depth), rng.uniform(0.3, 3.0, depth))
        result = expected_water_level(float(rng.uniform(0.0, 20.0)), float(rng.uniform(0.2, 3.0)), means)
        if not result.capped:
            assert result.residual <= 1e-9


def test_level_grows_with_energy_and_expected_harvests(rng):
    for _ in range(200):
        depth = int(rng.integers(1, 8))
        harvest = rng.uniform(0.0, 5.0, depth)
        means = LookaheadMeans(harvest, rng.uniform(0.3, 3.0, depth))
        energy, gamma = float(rng.uniform(0.0, 20.0)), float(rng.uniform(0.2, 3.0))
        level = expected_water_level(energy, gamma, means).level
        assert expected_water_level(energy + 0.5, gamma, means).level >= level - 1e-9
        for k in range(depth):
            richer = harvest.copy()
            richer[k] += 0.5
            assert expected_water_level(energy, gamma, means._replace(harvest=richer)).level >= level - 1e-9


@pytest.mark.parametrize("rho", [0.5, 1.0, 2.0, 7.25])
@pytest.mark.parametrize("gamma", [0.1, 1.0, 1.9])
def test_last_slot_inversion_is_the_power_itself(rho, gamma):
    assert invert_water_level(rho, gamma, NO_FUTURE) == Inversion(rho, True)


def test_zero_harvest_inversion_needs_every_slot():
    assert invert_water_level(2.5, 1.0, unit_gain_means(np.zeros(3))).energy == pytest.approx(10.0)


def test_abundant_harvests_collapse_to_the_power():
    assert invert_water_level(4.0, 1.0, unit_gain_means([1e6] * 5)).energy == pytest.approx(4.0)


def test_unreachable_target_returns_the_ceiling():
    assert invert_water_level(5.0, 1.0, unit_gain_means(np.zeros(3)), max_energy=10.0) == Inversion(10.0, False)


def test_array_targets_give_one_inversion_each():
    inversions = invert_water_level(np.array([1.0, 2.0, 4.0]), 1.0, unit_gain_means([0.0]))
    assert [inv.energy for inv in inversions] == pytest.approx([2.0, 4.0, 8.0])
    assert all(inv.reachable for inv in inversions)


def test_inversion_reaches_the_target_level(rng):
    for _ in range(100):
        depth = int(rng.integers(1, 6))
        means = LookaheadMeans(rng.uniform(0.0, 3.0, depth), rng.uniform(0.3, 3.0, depth))
        gamma = float(rng.uniform(0.2, 3.0))
        rho = float(rng.uniform(0.5, 5.0))
        for exact_min in (False, True):
            energy = invert_water_level(rho, gamma, means, exact_min=exact_min).energy
            if energy > 0:
                level = expected_water_level(energy, gamma, means, exact_min=exact_min).level
                assert level == pytest.approx(rho + 1.0 / gamma, abs=1e-6)


def test_window_minimum_needs_at_least_as_much_energy(rng):
    means = LookaheadMeans(rng.uniform(0.0, 3.0, 6), rng.uniform(0.3, 3.0, 6))
    targets = np.linspace(0.5, 6.0, 12)
    approximate = water_level_energy(targets + 1.0, 1.0, means)
    exact = water_level_energy(targets + 1.0, 1.0, means, exact_min=True)
    assert np.all(exact >= approximate - 1e-12)


def test_lookahead_means_follow_the_chains():
    harvest = HarvestModel([0.0, 256.0], [[0.9, 0.1], [0.5, 0.5]])
    channel = ChannelModel([0.5, 2.0], [[0.8, 0.2], [0.3, 0.7]])
    means = lookahead_means(harvest, channel, 4, 0, 1)
    assert means.harvest.shape == (3,)
    assert means.harvest[0] == pytest.approx(25.6)
    assert means.harvest[1] == pytest.approx(harvest.conditional_mean(0, 2))
    assert means.inverse_gain[0] == pytest.approx(0.3 * 2.0 + 0.7 * 0.5)
    assert lookahead_means(harvest, channel, 1, 0, 0).harvest.size == 0


def test_rejects_bad_arguments():
    with pytest.raises(DomainError):
        expected_water_level(-1.0, 1.0, NO_FUTURE)
    with pytest.raises(DomainError):
        expected_water_level(1.0, 0.0, NO_FUTURE)
    with pytest.raises(DomainError):
        expected_water_level(1.0, 1.0, LookaheadMeans(np.zeros(2), np.ones(3)))


@pytest.mark.slow
def test_fixed_point_residuals_at_scale(rng):
    checked = 0
    for _ in range(10_000):
        depth = int(rng.integers(0, 20))
        means = LookaheadMeans(rng.uniform(0.0, 50.0, depth), rng.uniform(0.05, 10.0, depth))
        result = expected_water_level(float(rng.uniform(0.0, 500.0)), float(rng.uniform(0.1, 10.0)), means)
        if not result.capped:
            assert result.residual <= 1e-9
            checked += 1
    assert checked > 0
