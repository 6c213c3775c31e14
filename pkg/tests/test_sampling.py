import numpy as np
import pytest

from core.errors import DomainError
from core.sim_classes.experiment import ExperimentSpec
from core.sim_functions.sampling import replication_rng, sample_paths, walk_chain


def test_replication_streams_are_keyed():
    a = replication_rng(7, 0, 3).random(5)
    np.testing.assert_array_equal(a, replication_rng(7, 0, 3).random(5))
    assert not np.array_equal(a, replication_rng(7, 0, 4).random(5))
    assert not np.array_equal(a, replication_rng(7, 1, 3).random(5))


def test_path_shapes(fading_problem):
    paths = sample_paths(ExperimentSpec(fading_problem, horizon=6, reps=4, seed=1))
    assert paths.harvest_states.shape == (4, 7)
    assert paths.channel_states.shape == (4, 6)
    assert paths.future_harvests().shape == (4, 5)
    np.testing.assert_array_equal(paths.harvests, fading_problem.harvest.states[paths.harvest_states])
    np.testing.assert_array_equal(paths.gains, fading_problem.channel.gains[paths.channel_states])
    assert (paths.reps, paths.horizon) == (4, 6)


def test_paths_do_not_depend_on_the_replication_count(burst_problem):
    few = sample_paths(ExperimentSpec(burst_problem, horizon=8, reps=3, seed=5))
    many = sample_paths(ExperimentSpec(burst_problem, horizon=8, reps=9, seed=5))
    np.testing.assert_array_equal(few.harvest_states, many.harvest_states[:3])


def test_deterministic_chain_walk():
    uniforms = np.random.default_rng(0).random((2, 6))
    states = walk_chain(uniforms, np.array([1.0, 0.0]), np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_array_equal(states, [[0, 1, 0, 1, 0, 1]] * 2)


def test_state_frequencies_follow_the_stationary_distribution(burst_problem):
    paths = sample_paths(ExperimentSpec(burst_problem, horizon=50, reps=2000, seed=11))
    assert np.mean(paths.harvest_states == 1) == pytest.approx(1 / 6, abs=0.02)


def test_transition_frequencies_match_the_chain(burst_problem):
    paths = sample_paths(ExperimentSpec(burst_problem, horizon=100, reps=10_000, seed=3))
    current = paths.harvest_states[:, :-1].ravel()
    following = paths.harvest_states[:, 1:].ravel()
    counts = np.zeros((2, 2))
    np.add.at(counts, (current, following), 1)
    visits = counts.sum(axis=1, keepdims=True)
    empirical = counts / visits
    expected = np.array([[0.9, 0.1], [0.5, 0.5]])
    se = np.sqrt(expected * (1 - expected) / visits)
    assert np.all(np.abs(empirical - expected) <= 3 * se)


def test_fixed_initial_state(burst_problem):
    paths = sample_paths(ExperimentSpec(burst_problem, horizon=3, reps=20, initial_harvest=1))
    assert np.all(paths.harvest_states[:, 0] == 1)


@pytest.mark.parametrize(
    "kwargs",
    [{"horizon": 0}, {"reps": 0}, {"initial_energy": -1.0}],
)
def test_spec_validation(burst_problem, kwargs):
    with pytest.raises(DomainError):
        ExperimentSpec(burst_problem, **kwargs)


@pytest.mark.parametrize("start", [2, [0.5, 0.6], [1.0]])
def test_bad_initial_states(burst_problem, start):
    with pytest.raises(DomainError):
        ExperimentSpec(burst_problem, initial_harvest=start).harvest_start()
