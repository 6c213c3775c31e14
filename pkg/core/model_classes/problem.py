import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ModelError
from .markov_chain import ChannelModel, HarvestModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Problem:
    """Everything that defines one scheduling instance.

    Attributes:
        harvest (HarvestModel): Harvest chain with on-grid states.
        channel (ChannelModel): Channel chain; single unit gain for the static problem.
        power_set (PowerRateSet): Power levels and rate, idle convention resolved.
        grid (EnergyGrid): Stored-energy quantization.
        harvest_rounding_error (float): Largest change made when snapping harvests to the grid.
    """

    harvest: HarvestModel
    channel: ChannelModel
    power_set: object
    grid: object
    harvest_rounding_error: float = 0.0

    @property
    def slot_s(self):
        return self.harvest.slot_duration

    @property
    def harvest_units(self):
        return self.grid.units(self.harvest.states, what="harvest state")

    @property
    def action_units(self):
        return self.grid.units(self.power_set.actions, what="per-slot drain")


def build_problem(harvest, power_set, grid, channel=None, idle=None):
    """Assembles a Problem, snapping harvests to the grid and checking drains.

    Args:
        harvest (HarvestModel): Harvest chain; states are rounded to the nearest grid point.
        power_set (PowerRateSet): Power levels; every per-slot drain must be on the grid.
        grid (EnergyGrid): Energy quantization.
        channel (ChannelModel, optional): Defaults to the static channel.
        idle (bool, optional): Idle action override. By default idle is offered only
            when the channel actually fades.

    Returns:
        Problem: The validated instance.

    Raises:
        OffGridError: If a per-slot drain is not a multiple of the quantum.
        ModelError: If snapping merges two harvest states.
    """
    channel = channel if channel is not None else ChannelModel.static()

    snapped, error = grid.snap(harvest.states)
    if np.any(np.diff(snapped) <= 0):
        raise ModelError(f"harvest states {harvest.states.tolist()} collapse on a {grid.quantum:g} mJ grid")
    if error > 0:
        logger.warning("harvest states rounded to the energy grid (max error %.6g mJ)", error)
        harvest = HarvestModel(snapped, harvest.transitions, harvest.slot_duration)

    if abs(power_set.slot_s - harvest.slot_duration) > 1e-12:
        raise ModelError(
            f"power set slot length {power_set.slot_s:g} s differs from harvest slot {harvest.slot_duration:g} s"
        )

    if idle is None:
        idle = not channel.is_static
    power_set = power_set.with_idle(idle)
    grid.units(power_set.drains, what="per-slot drain")

    if grid.max_energy < harvest.states.max():
        raise ModelError("grid ceiling lies below the largest harvest state")

    return Problem(harvest, channel, power_set, grid, error)
