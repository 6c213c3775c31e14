"""Offline optimum for a known realization: the stretched-string and water-filling schedules."""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

BISECTION_STEPS = 64


@dataclass(frozen=True)
class OfflineSolution:
    """Continuous-power offline schedule for one realization, in time order (slot N first).

    Attributes:
        powers (np.ndarray): Per-slot drains.
        water_levels (np.ndarray | None): Per-slot water levels (fading solution only).
        bits (np.ndarray | None): Per-slot bits when a power set was supplied.
        total_bits (float | None): Sum of bits.
        margins (np.ndarray): Energy left after each slot's transmission (the slack of each causality constraint).
    """

    powers: np.ndarray
    water_levels: np.ndarray = None
    bits: np.ndarray = None
    total_bits: float = None
    margins: np.ndarray = None


def offline_power_static(energy, future_harvests):
    """Highest constant power the stored energy and known future harvests can sustain from this slot.

    Args:
        energy (float): Stored energy e_n.
        future_harvests (Sequence[float]): H_{n-1}, ..., H_1, nearest first; n - 1 values.

    Returns:
        float: min(e_n, min_a (e_n + sum_{l=a}^{n-1} H_l) / (n - a + 1)).
    """
    harvests = np.asarray(future_harvests, dtype=float)
    if energy < 0:
        raise DomainError("stored energy must be nonnegative")
    if np.any(harvests < 0):
        raise DomainError("harvests must be nonnegative")
    budgets = energy + np.concatenate(([0.0], np.cumsum(harvests)))
    return float(np.min(budgets / np.arange(1, budgets.size + 1)))


def solve_offline_static_batch(initial_energy, harvests):
    """Stretched-string schedules of many realizations at once.

    Args:
        initial_energy (float | np.ndarray): e_N per realization.
        harvests (np.ndarray): Shape (R, N - 1); column t is the harvest arriving after slot N - t.

    Returns:
        np.ndarray: Powers of shape (R, N).
    """
    harvests = np.atleast_2d(np.asarray(harvests, dtype=float))
    if np.any(harvests < 0):
        raise DomainError("harvests must be nonnegative")
    reps, horizon = harvests.shape[0], harvests.shape[1] + 1
    energy = np.broadcast_to(np.asarray(initial_energy, dtype=float), (reps,)).copy()
    powers = np.empty((reps, horizon))

    for t in range(horizon):
        slots_to_go = horizon - t
        prefix = np.cumsum(harvests[:, t:], axis=1)
        budgets = energy[:, None] + np.concatenate((np.zeros((reps, 1)), prefix), axis=1)
        powers[:, t] = np.min(budgets / np.arange(1, slots_to_go + 1), axis=1)
        energy = np.maximum(energy - powers[:, t], 0.0)
        if t < horizon - 1:
            energy += harvests[:, t]
    return powers


def solve_offline_static(initial_energy, harvests, power_set=None):
    """Stretched-string schedule of one realization.

    Args:
        initial_energy (float): e_N.
        harvests (Sequence[float]): H_{N-1}, ..., H_1 in time order.
        power_set (PowerRateSet, optional): When given, bits are evaluated on the static channel.

    Returns:
        OfflineSolution: Powers, bits and per-slot margins.
    """
    harvests = np.asarray(harvests, dtype=float)
    powers = solve_offline_static_batch(initial_energy, harvests[None, :])[0]
    return _solution(initial_energy, harvests, powers, None, power_set, 1.0)


def solve_offline_fading_batch(initial_energy, harvests, gains, noise_energy=1.0):
    """Directional water-filling schedules of many realizations at once.

    The water level of each slot is the largest level that every window
    starting at that slot can afford; power is (level - noise / gain)_+.

    Args:
        initial_energy (float | np.ndarray): e_N per realization.
        harvests (np.ndarray): Shape (R, N - 1), time order.
        gains (np.ndarray): Shape (R, N), time order.
        noise_energy (float): Noise energy of the rate function.

    Returns:
        tuple[np.ndarray, np.ndarray]: Powers and water levels, both of shape (R, N).
    """
    harvests = np.atleast_2d(np.asarray(harvests, dtype=float))
    gains = np.atleast_2d(np.asarray(gains, dtype=float))
    if np.any(harvests < 0):
        raise DomainError("harvests must be nonnegative")
    if np.any(gains <= 0):
        raise DomainError("channel gains must be positive")
    reps, horizon = gains.shape
    floors = noise_energy / gains
    energy = np.broadcast_to(np.asarray(initial_energy, dtype=float), (reps,)).copy()
    powers = np.empty((reps, horizon))
    levels = np.empty((reps, horizon))

    for t in range(horizon):
        window = floors[:, t:]
        budgets = energy[:, None] + np.concatenate(
            (np.zeros((reps, 1)), np.cumsum(harvests[:, t:], axis=1)), axis=1
        )
        slack = 1e-12 * np.maximum(1.0, budgets)
        lo = np.zeros(reps)
        hi = energy + window[:, 0]
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            spent = np.cumsum(np.maximum(mid[:, None] - window, 0.0), axis=1)
            feasible = np.all(spent <= budgets + slack, axis=1)
            lo = np.where(feasible, mid, lo)
            hi = np.where(feasible, hi, mid)
        levels[:, t] = lo
        powers[:, t] = np.minimum(np.maximum(lo - window[:, 0], 0.0), energy)
        energy = np.maximum(energy - powers[:, t], 0.0)
        if t < horizon - 1:
            energy += harvests[:, t]
    return powers, levels


def solve_offline_fading(initial_energy, harvests, gains, power_set):
    """Directional water-filling schedule of one realization."""
    harvests = np.asarray(harvests, dtype=float)
    gains = np.asarray(gains, dtype=float)
    powers, levels = solve_offline_fading_batch(
        initial_energy, harvests[None, :], gains[None, :], power_set.noise_energy
    )
    return _solution(initial_energy, harvests, powers[0], levels[0], power_set, gains)


def _solution(initial_energy, harvests, powers, levels, power_set, gains):
    energy = float(initial_energy)
    margins = np.empty_like(powers)
    for t, power in enumerate(powers):
        margins[t] = energy - power
        energy = max(energy - power, 0.0) + (harvests[t] if t < harvests.size else 0.0)
    bits = power_set.bits(powers, gains) if power_set is not None else None
    total = float(np.sum(bits)) if bits is not None else None
    return OfflineSolution(powers, levels, bits, total, margins)
