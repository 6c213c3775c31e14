"""Per-slot primitives: delivered bits, the energy recursion and harvest statistics."""

import math

import numpy as np

from ..errors import DomainError


def bits_delivered(power_set, energy, rho, gamma=1.0):
    """Bits delivered in one slot, allowing partial-slot transmission.

    Args:
        power_set (PowerRateSet): Supplies the rate function g.
        energy (float | np.ndarray): Stored energy at the start of the slot, in mJ.
        rho (float | np.ndarray): Per-slot drain of the chosen action, 0 for idle.
        gamma (float | np.ndarray): Channel gain; 1 for the static channel.

    Returns:
        float | np.ndarray: g(gamma * rho) * min(energy / rho, 1), and 0 where rho is 0.

    Raises:
        DomainError: On negative energy or drain, or nonpositive gain.
    """
    energy = np.asarray(energy, dtype=float)
    rho = np.asarray(rho, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if np.any(energy < 0):
        raise DomainError("stored energy must be nonnegative")
    if np.any(rho < 0):
        raise DomainError("power decision must be nonnegative")
    if np.any(gamma <= 0):
        raise DomainError("channel gain must be positive")

    active = rho > 0
    safe_rho = np.where(active, rho, 1.0)
    fraction = np.minimum(energy / safe_rho, 1.0)
    bits = np.where(active, power_set.bits(safe_rho, gamma) * fraction, 0.0)
    return float(bits) if bits.ndim == 0 else bits


def energy_update(energy, rho, harvest, max_energy=math.inf, clamp_log=None):
    """Stored energy at the next slot: (energy - rho)_+ + harvest, clamped to the grid ceiling.

    Args:
        energy (float | np.ndarray): Stored energy this slot.
        rho (float | np.ndarray): Per-slot drain spent this slot.
        harvest (float | np.ndarray): Energy harvested during this slot.
        max_energy (float): Grid ceiling.
        clamp_log (ClampCounter, optional): Receives the number of clamped updates.

    Returns:
        float | np.ndarray: The next stored energy.
    """
    energy = np.asarray(energy, dtype=float)
    rho = np.asarray(rho, dtype=float)
    harvest = np.asarray(harvest, dtype=float)
    if np.any(energy < 0) or np.any(harvest < 0) or np.any(rho < 0):
        raise DomainError("energy, drain and harvest must be nonnegative")

    raw = np.maximum(energy - rho, 0.0) + harvest
    over = raw > max_energy
    if clamp_log is not None:
        clamp_log.add(np.count_nonzero(over))
    result = np.where(over, max_energy, raw)
    return float(result) if result.ndim == 0 else result


def conditional_mean_harvest(model, current_state, lookahead):
    """E[H_{n-k} | H_n = h_i] for k = lookahead >= 1, from cached powers of Q."""
    if lookahead < 1:
        raise DomainError("lookahead must be at least one slot")
    return model.conditional_mean(current_state, lookahead)


def stationary_mean_harvest(model):
    """Long-run mean harvest per slot under the unique stationary distribution."""
    return model.stationary_mean()
