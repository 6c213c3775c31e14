from ..errors import DomainError
from ..model_classes.energy_grid import ClampCounter
from .base import Policy


class TablePolicy(Policy):
    """Optimal policy read from a solved value table at the nearest grid energy."""

    name = "optimal-dp"

    def __init__(self, table):
        super().__init__(table.problem)
        self.table = table
        self.lookup_clamps = ClampCounter()

    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        if slots_to_go > self.table.horizon:
            raise DomainError(f"table covers {self.table.horizon} slots, asked for {slots_to_go}")
        k = self.problem.grid.index(energy, self.lookup_clamps)
        choice = self.table.decisions[slots_to_go - 1, k, harvest_state, channel_state]
        return self.problem.power_set.actions[choice]
