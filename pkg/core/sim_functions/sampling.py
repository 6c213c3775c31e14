import logging

import numpy as np

from ..sim_classes.experiment import PathSet

logger = logging.getLogger(__name__)


def replication_rng(seed, cell, rep):
    """Generator of replication `rep` in sweep cell `cell`, independent of run order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(cell, rep)))


def _draw(cdf, uniforms):
    return np.minimum((uniforms[:, None] >= cdf).sum(axis=1), cdf.shape[-1] - 1)


def walk_chain(uniforms, start, transitions):
    """Markov chain state paths by inverse-CDF sampling.

    Args:
        uniforms (np.ndarray): Shape (R, L) of uniforms in [0, 1).
        start (np.ndarray): Initial state distribution.
        transitions (np.ndarray): Row-stochastic transition matrix.

    Returns:
        np.ndarray: State indices of shape (R, L).
    """
    reps, length = uniforms.shape
    cumulative = np.cumsum(transitions, axis=1)
    states = np.empty((reps, length), dtype=np.int64)
    states[:, 0] = _draw(np.cumsum(start)[None, :], uniforms[:, 0])
    for t in range(1, length):
        states[:, t] = _draw(cumulative[states[:, t - 1]], uniforms[:, t])
    return states


def sample_paths(spec):
    """Draws R harvest/channel paths of a cell.

    Replication r uses its own stream keyed on (seed, cell, r), so a path
    never depends on how replications are split over workers.

    Args:
        spec (ExperimentSpec): The cell.

    Returns:
        PathSet: Harvest states for slots N..0 and channel states for slots N..1.
    """
    problem = spec.problem
    horizon = spec.horizon
    uniforms = np.stack(
        [replication_rng(spec.seed, spec.cell, r).random(2 * horizon + 1) for r in range(spec.reps)]
    )
    harvest_states = walk_chain(uniforms[:, : horizon + 1], spec.harvest_start(), problem.harvest.transitions)
    channel_states = walk_chain(uniforms[:, horizon + 1 :], spec.channel_start(), problem.channel.transitions)
    logger.debug("sampled %d paths of %d slots (cell %d)", spec.reps, horizon, spec.cell)
    return PathSet(
        harvest_states,
        problem.harvest.states[harvest_states],
        channel_states,
        problem.channel.gains[channel_states],
    )
