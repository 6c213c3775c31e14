"""Backward induction of the optimal value function over the quantized state space."""

import logging
from typing import NamedTuple

import numpy as np

from ..dp_classes.value_table import ValueTable
from ..errors import DomainError
from ..model_functions.slot_functions import bits_delivered

logger = logging.getLogger(__name__)

TIE_TOL = 1e-12


class TerminalLayer(NamedTuple):
    values: np.ndarray
    decisions: np.ndarray


def closed_form_terminal(energies, power_set, gamma=1.0):
    """Piecewise form of the last-slot value: plateaus at g(gamma rho_m), linear ramps between.

    Returns:
        TerminalLayer: Values and level indices (into power_set.drains) per energy.
    """
    energies = np.asarray(energies, dtype=float)
    drains = power_set.drains
    full = power_set.bits(drains, gamma)
    values = np.empty_like(energies)
    levels = np.empty(energies.shape, dtype=np.int64)

    below = energies < drains[0]
    values[below] = full[0] * energies[below] / drains[0]
    levels[below] = 0
    for m in range(drains.size - 1):
        breakpoint_ = full[m] / full[m + 1] * drains[m + 1]
        plateau = (energies >= drains[m]) & (energies < breakpoint_)
        ramp = (energies >= breakpoint_) & (energies < drains[m + 1])
        values[plateau] = full[m]
        levels[plateau] = m
        values[ramp] = full[m + 1] * energies[ramp] / drains[m + 1]
        levels[ramp] = m + 1
    top = energies >= drains[-1]
    values[top] = full[-1]
    levels[top] = drains.size - 1
    return TerminalLayer(values, levels)


def terminal_layer(power_set, grid, gamma=1.0):
    """Last-slot values max_rho g_r(e, gamma, rho) and decisions over the energy grid.

    Decisions are indices into power_set.actions and follow the closed-form
    branches, so at an exact breakpoint the higher level is chosen.
    """
    energies = grid.energies
    drains = power_set.drains
    bits = bits_delivered(power_set, energies[:, None], drains[None, :], gamma)
    offset = 1 if power_set.includes_idle else 0
    levels = closed_form_terminal(energies, power_set, gamma).decisions
    return TerminalLayer(bits.max(axis=1), levels + offset)


class BellmanOperator:
    """Precomputed transition structure shared by every layer of one problem."""

    def __init__(self, problem):
        self.problem = problem
        grid = problem.grid
        self.size = grid.size
        self.actions = problem.power_set.actions
        action_units = problem.action_units
        harvest_units = problem.harvest_units

        depleted = np.maximum(np.arange(self.size)[None, :] - action_units[:, None], 0)
        raw_next = depleted[:, :, None] + harvest_units[None, None, :]
        self.clamp_transitions = int(np.count_nonzero(raw_next > self.size - 1))
        # (actions, energy, next harvest)
        self.next_index = np.minimum(raw_next, self.size - 1)

        gains = problem.channel.gains
        # (actions, energy, gain)
        self.immediate = bits_delivered(
            problem.power_set, grid.energies[None, :, None], self.actions[:, None, None], gains[None, None, :]
        )

    def action_values(self, previous):
        """V_n(e, h_i, gamma_u, rho) for every action, given layer n - 1.

        Args:
            previous (np.ndarray | None): V*_{n-1} of shape (grid, harvest, gains); None for n = 1.

        Returns:
            np.ndarray: Shape (actions, grid, harvest, gains).
        """
        harvest_count = self.problem.harvest.size
        if previous is None:
            return np.repeat(self.immediate[:, :, None, :], harvest_count, axis=2)

        q = self.problem.harvest.transitions
        f = self.problem.channel.transitions
        next_harvest = np.arange(harvest_count)[None, :]
        out = np.empty((self.actions.size, self.size, harvest_count, f.shape[0]))
        for a in range(self.actions.size):
            reached = previous[self.next_index[a], next_harvest, :]
            over_gain = reached @ f.T
            out[a] = self.immediate[a][:, None, :] + np.einsum("ij,kju->kiu", q, over_gain)
        return out


def _argmax_low(action_values):
    best = action_values.max(axis=0)
    tol = TIE_TOL * np.maximum(1.0, np.abs(best))
    return best, np.argmax(action_values >= best - tol, axis=0)


def backward_induct(problem, horizon):
    """Solves V_n* for n = 1..horizon by backward induction.

    Args:
        problem (Problem): Instance with on-grid harvests and drains.
        horizon (int): Number of slots N >= 1.

    Returns:
        ValueTable: Values and lowest-power argmax decisions for every layer.
    """
    if horizon < 1:
        raise DomainError("horizon must be at least one slot")

    bellman = BellmanOperator(problem)
    if bellman.clamp_transitions:
        logger.warning(
            "%d transitions exceed the %g mJ grid ceiling and are clamped",
            bellman.clamp_transitions,
            problem.grid.max_energy,
        )
    shape = (horizon, problem.grid.size, problem.harvest.size, problem.channel.size)
    values = np.empty(shape)
    decisions = np.empty(shape, dtype=np.int16)

    for u, gamma in enumerate(problem.channel.gains):
        layer = terminal_layer(problem.power_set, problem.grid, gamma)
        values[0, :, :, u] = layer.values[:, None]
        decisions[0, :, :, u] = layer.decisions[:, None]

    for n in range(2, horizon + 1):
        best, choice = _argmax_low(bellman.action_values(values[n - 2]))
        values[n - 1] = best
        decisions[n - 1] = choice
        logger.debug("solved layer %d of %d", n, horizon)

    logger.info(
        "solved %d layers over %d energy points, %d harvest and %d channel states",
        horizon,
        problem.grid.size,
        problem.harvest.size,
        problem.channel.size,
    )
    return ValueTable(problem, values, decisions, bellman.clamp_transitions)


def action_values(table, n, bellman=None):
    """V_n(e, h, gamma, rho) for every action of layer n, recomputed from layer n - 1."""
    bellman = bellman if bellman is not None else BellmanOperator(table.problem)
    previous = None if n == 1 else table.values[n - 2]
    return bellman.action_values(previous)
