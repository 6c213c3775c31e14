import math

import numpy as np

from ..errors import DomainError
from ..model_classes.energy_grid import ClampCounter
from ..model_functions.slot_functions import bits_delivered, energy_update
from ..sim_classes.experiment import Trajectory


def run_policy(policy, paths, spec):
    """Runs one policy slot by slot over every path.

    At slot n the policy sees (n, stored energy, harvest state H_n, channel
    state); the harvest H_{n-1} is added after the transmission. H_0 is never
    spent.

    Args:
        policy (Policy): Online policy.
        paths (PathSet): Common sampled paths.
        spec (ExperimentSpec): Supplies e_N and the problem.

    Returns:
        Trajectory: Energies, powers and bits of every slot.

    Raises:
        DomainError: If the policy emits a negative power.
    """
    problem = spec.problem
    reps, horizon = paths.reps, paths.horizon
    energies = np.empty((reps, horizon))
    powers = np.empty((reps, horizon))
    bits = np.empty((reps, horizon))
    clamps = ClampCounter()

    energy = np.full(reps, float(spec.initial_energy))
    for t in range(horizon):
        slots_to_go = horizon - t
        rho = np.asarray(
            policy.decide_batch(slots_to_go, energy, paths.harvest_states[:, t], paths.channel_states[:, t]),
            dtype=float,
        )
        if np.any(rho < 0):
            raise DomainError(f"policy {policy.name} emitted a negative power at n={slots_to_go}")
        energies[:, t] = energy
        powers[:, t] = rho
        bits[:, t] = bits_delivered(problem.power_set, energy, rho, paths.gains[:, t])
        if t < horizon - 1:
            energy = energy_update(energy, rho, paths.harvests[:, t + 1], problem.grid.max_energy, clamps)
    return Trajectory(policy.name, energies, powers, bits, clamps.count)


def mean_delay(bits):
    """Bit-weighted mean of N - n + 1 over one trajectory given in time order.

    Returns:
        float | None: The mean delay in slots, None when no bit was delivered.
    """
    bits = np.asarray(bits, dtype=float)
    total = math.fsum(bits)
    if total <= 0:
        return None
    return math.fsum(bits * np.arange(1, bits.size + 1)) / total


def mean_delays(bits):
    """Per-replication mean delays of a (R, N) bit array; NaN where undefined."""
    bits = np.asarray(bits, dtype=float)
    totals = bits.sum(axis=1)
    weighted = bits @ np.arange(1, bits.shape[1] + 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(totals > 0, weighted / np.where(totals > 0, totals, 1.0), np.nan)
