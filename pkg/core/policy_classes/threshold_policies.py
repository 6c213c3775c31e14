import logging

import numpy as np

from ..offline_functions.water_level import invert_water_level, lookahead_means
from .base import Policy, largest_admissible

logger = logging.getLogger(__name__)


class ExpectedThresholdPolicy(Policy):
    """Picks the largest level rho with L_n(rho) <= e, where

        L_n(rho) = max(rho, rho * n - sum_{l=1}^{n-1} E[H_l | current harvest state])

    and L_n(rho_min) = 0. Thresholds depend only on (n, harvest state) and are
    computed once per n, O((|U| - 1) n) each.
    """

    name = "expected-threshold"

    def __init__(self, problem):
        super().__init__(problem)
        if not problem.channel.is_static:
            logger.warning("expected-threshold ignores channel state on a fading channel")

    def thresholds(self, slots_to_go):
        """L_n(rho) for every harvest state and level, shape (harvest states, levels)."""
        return self._cached(slots_to_go, lambda: self._build(slots_to_go))

    def _build(self, slots_to_go):
        drains = self.problem.power_set.drains
        future = self.problem.harvest.lookahead_means(slots_to_go - 1)[1:].sum(axis=0)
        thresholds = np.maximum(drains[None, :], drains[None, :] * slots_to_go - future[:, None])
        thresholds[:, 0] = 0.0
        return thresholds

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        drains = self.problem.power_set.drains
        table = self.thresholds(slots_to_go)[harvest_state]
        return largest_admissible(table, energy, drains, drains[0])


class ExpectedWaterLevelPolicy(Policy):
    """Fading-channel threshold policy driven by the expected water level.

    L_n(rho) = max(rho, minimal e with E[w_n(e)] >= rho + noise / gamma_n) for
    rho > 0 and L_n(0) = 0; the largest admissible action is chosen. Levels
    whose water level lies beyond the grid ceiling get an infinite threshold.
    Without the idle action, energies below every threshold fall back to rho_min.
    """

    name = "expected-water-level"

    def __init__(self, problem, exact_min=False):
        super().__init__(problem)
        self.exact_min = exact_min

    def thresholds(self, slots_to_go):
        """Thresholds of shape (harvest states, channel states, levels)."""
        return self._cached(slots_to_go, lambda: self._build(slots_to_go))

    def _build(self, slots_to_go):
        problem = self.problem
        drains = problem.power_set.drains
        out = np.empty((problem.harvest.size, problem.channel.size, drains.size))
        for i in range(problem.harvest.size):
            for u, gamma in enumerate(problem.channel.gains):
                means = lookahead_means(problem.harvest, problem.channel, slots_to_go, i, u)
                inversions = invert_water_level(
                    drains,
                    gamma,
                    means,
                    problem.power_set.noise_energy,
                    max_energy=problem.grid.max_energy,
                    exact_min=self.exact_min,
                )
                # a level the ceiling cannot reach is never admissible
                energies = [inv.energy if inv.reachable else np.inf for inv in inversions]
                out[i, u] = np.maximum(drains, energies)
        return out

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        power_set = self.problem.power_set
        table = self.thresholds(slots_to_go)[harvest_state, channel_state]
        fallback = 0.0 if power_set.includes_idle else power_set.rho_min
        return largest_admissible(table, energy, power_set.drains, fallback)
