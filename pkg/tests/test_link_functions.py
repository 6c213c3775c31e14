import numpy as np
import pytest

from core.errors import DomainError, ModelError
from core.ingest_functions.link_functions import build_fading_model, build_power_rate_set, gain_weights


def test_default_fading_chain():
    channel = build_fading_model()
    assert channel.size == 7
    assert channel.gains[0] == pytest.approx(0.1)
    assert channel.gains[-1] == pytest.approx(1.9)
    np.testing.assert_allclose(channel.transitions.sum(axis=1), 1.0)
    assert np.all(np.diag(channel.transitions) >= 0.5)


def test_mixing_keeps_the_fading_weights_stationary():
    channel = build_fading_model("nakagami", num_levels=5, mixing=0.3, shape=2.0)
    weights = gain_weights("nakagami", channel.gains, 2.0)
    np.testing.assert_allclose(channel.stationary_distribution(), weights, atol=1e-12)


def test_independent_gains():
    channel = build_fading_model(num_levels=4, mixing=1.0)
    np.testing.assert_allclose(channel.transitions, np.tile(channel.transitions[0], (4, 1)))


def test_single_level_is_static():
    assert build_fading_model(num_levels=1).is_static


def test_rayleigh_weights_decrease():
    weights = gain_weights("rayleigh", np.linspace(0.1, 1.9, 7))
    assert weights.sum() == pytest.approx(1.0)
    assert np.all(np.diff(weights) < 0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"mixing": 0.0},
        {"mixing": 1.2},
        {"num_levels": 0},
        {"gain_range": (0.0, 1.0)},
        {"gain_range": (1.0, 1.0)},
        {"kind": "rician"},
        {"kind": "nakagami", "shape": 0.3},
    ],
)
def test_bad_fading_parameters(kwargs):
    with pytest.raises(DomainError):
        build_fading_model(**kwargs)


def test_power_set_from_link():
    power_set = build_power_rate_set([5, 10, 23], bandwidth_hz=40e6, noise_psd_w_per_hz=0.83e-9)
    assert power_set.noise_energy == pytest.approx(33.2)
    with pytest.raises(ModelError):
        build_power_rate_set([10, 5])
