import logging

import numpy as np

from ..model_functions.slot_functions import stationary_mean_harvest
from .base import Policy, largest_admissible

logger = logging.getLogger(__name__)


class GreedyPolicy(Policy):
    """Highest level that lasts the whole slot; rho_min (partial slot) below rho_min."""

    name = "greedy"

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        drains = self.problem.power_set.drains
        return largest_admissible(np.broadcast_to(drains, (energy.size, drains.size)), energy, drains, drains[0])


class SinglePowerPolicy(Policy):
    """Always the largest level not above the mean harvest per slot, whenever any energy is stored.

    Args:
        problem (Problem): Instance.
        fixed_level (float, optional): Per-slot drain to use instead of the derived one.
    """

    name = "single-power"

    def __init__(self, problem, fixed_level=None):
        super().__init__(problem)
        self.fixed_level = fixed_level if fixed_level is not None else self._derive_level()

    def _derive_level(self):
        drains = self.problem.power_set.drains
        mean = stationary_mean_harvest(self.problem.harvest)
        admissible = drains[drains <= mean + 1e-9]
        if admissible.size == 0:
            logger.warning(
                "mean harvest %.6g mJ/slot lies below the lowest level; single-power uses %.6g", mean, drains[0]
            )
            return float(drains[0])
        return float(admissible[-1])

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        return np.where(energy > 0, self.fixed_level, 0.0)


class ThroughputOptimalPolicy(Policy):
    """Stationary rule min(e, E[H]); the decision is generally not a member of U."""

    name = "to"

    def __init__(self, problem):
        super().__init__(problem)
        self.mean_harvest = stationary_mean_harvest(problem.harvest)

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        return np.minimum(energy, self.mean_harvest)
