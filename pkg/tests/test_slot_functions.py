import numpy as np
import pytest

from core.errors import DomainError
from core.model_classes.energy_grid import ClampCounter
from core.model_functions.presets import burst_harvest_model, normalized_power_set
from core.model_functions.slot_functions import bits_delivered, conditional_mean_harvest, energy_update


@pytest.fixture
def power_set():
    return normalized_power_set([100.0])


def test_full_slot_when_energy_suffices(power_set):
    assert bits_delivered(power_set, 200.0, 100.0) == pytest.approx(np.log2(101.0))


def test_no_energy_no_bits(power_set):
    assert bits_delivered(power_set, 0.0, 100.0, 0.3) == 0.0


def test_partial_slot(power_set):
    assert bits_delivered(power_set, 50.0, 100.0) == pytest.approx(0.5 * np.log2(101.0))


def test_idle_delivers_nothing(power_set):
    assert bits_delivered(power_set, 50.0, 0.0) == 0.0


def test_gain_scales_received_power(power_set):
    assert bits_delivered(power_set, 200.0, 100.0, 0.5) == pytest.approx(np.log2(51.0))


def test_vectorized(power_set):
    bits = bits_delivered(power_set, np.array([0.0, 50.0, 200.0]), np.array([100.0, 100.0, 0.0]))
    np.testing.assert_allclose(bits, [0.0, 0.5 * np.log2(101.0), 0.0])


@pytest.mark.parametrize("energy, rho, gamma", [(-1.0, 1.0, 1.0), (1.0, 1.0, 0.0), (1.0, -2.0, 1.0)])
def test_domain_errors(power_set, energy, rho, gamma):
    with pytest.raises(DomainError):
        bits_delivered(power_set, energy, rho, gamma)


def test_bits_nondecreasing_in_energy_and_gain():
    power_set = normalized_power_set([1.0, 2.0, 4.0])
    energies = np.linspace(0.0, 6.0, 61)
    for rho in power_set.drains:
        by_energy = bits_delivered(power_set, energies, rho)
        assert np.all(np.diff(by_energy) >= 0)
        by_gain = bits_delivered(power_set, 3.0, rho, np.linspace(0.1, 2.0, 20))
        assert np.all(np.diff(by_gain) >= 0)


@pytest.mark.parametrize("energy, rho, harvest, expected", [(5, 3, 2, 4), (2, 5, 1, 1), (0, 0, 256, 256)])
def test_energy_update(energy, rho, harvest, expected):
    assert energy_update(energy, rho, harvest) == expected


def test_energy_update_clamps_and_counts():
    counter = ClampCounter()
    result = energy_update(np.array([10.0, 1.0]), 0.0, 5.0, max_energy=12.0, clamp_log=counter)
    np.testing.assert_allclose(result, [12.0, 6.0])
    assert counter.count == 1


def test_energy_update_rejects_negative_harvest():
    with pytest.raises(DomainError):
        energy_update(1.0, 0.0, -1.0)


def test_lookahead_must_be_positive():
    with pytest.raises(DomainError):
        conditional_mean_harvest(burst_harvest_model(), 0, 0)
