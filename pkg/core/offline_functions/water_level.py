"""Expected water level of the offline fading solution, used by the online water-level policy.

The water level w of the slot with n slots to go solves

    w = [e + c_n + sum_k (E[H_k] + E[c_k]) - (c_n - w)_+ - sum_k (E[c_k] - w)_+] / n

over the n - 1 future slots k, where c = noise / gain. It is capped by the
current slot alone, w <= e + c_n. The exact form takes the minimum of the
same expression over every window of nearest future slots.
"""

import logging
from typing import NamedTuple

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)

FIXED_POINT_TOL = 1e-9
MAX_BISECTIONS = 200


class LookaheadMeans(NamedTuple):
    """Conditional means over the future slots, nearest first.

    Attributes:
        harvest (np.ndarray): E[H_k | current harvest state] for k = n-1, ..., 1.
        inverse_gain (np.ndarray): E[1 / gamma_k | current channel state], same order.
    """

    harvest: np.ndarray
    inverse_gain: np.ndarray


class WaterLevel(NamedTuple):
    level: float
    capped: bool
    residual: float


class Inversion(NamedTuple):
    energy: float
    reachable: bool


def lookahead_means(harvest_model, channel_model, slots_to_go, harvest_state, channel_state):
    """Builds the conditional means needed at a slot from the two chains."""
    depth = slots_to_go - 1
    harvest = harvest_model.lookahead_means(depth)[1:, harvest_state]
    inverse = channel_model.lookahead_means(depth, channel_model.inverse_gains)[1:, channel_state]
    return LookaheadMeans(harvest, inverse)


def _check(energy, gamma, means):
    if np.any(np.asarray(energy) < 0):
        raise DomainError("stored energy must be nonnegative")
    if gamma <= 0:
        raise DomainError("channel gain must be positive")
    harvest = np.asarray(means.harvest, dtype=float)
    inverse = np.asarray(means.inverse_gain, dtype=float)
    if harvest.shape != inverse.shape:
        raise DomainError("harvest and gain lookahead means must have equal length")
    return harvest, inverse


def _window_fixed_point(energy, floor, harvest, floors):
    """Largest fixed point of the water-level map over one window, by bisection.

    Returns:
        WaterLevel: capped is set when the map has no fixed point below e + floor.
    """
    width = harvest.size + 1
    constant = energy + floor + np.sum(harvest) + np.sum(floors)

    def gap(w):
        return w - (constant - max(floor - w, 0.0) - np.sum(np.maximum(floors - w, 0.0))) / width

    lo, hi = 0.0, energy + floor
    gap_hi = gap(hi)
    if gap_hi <= 0.0:
        return WaterLevel(hi, gap_hi < -FIXED_POINT_TOL, abs(gap_hi))

    for _ in range(MAX_BISECTIONS):
        if hi - lo <= FIXED_POINT_TOL * 1e-3:
            break
        mid = 0.5 * (lo + hi)
        if gap(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return WaterLevel(lo, False, abs(gap(lo)))


def expected_water_level(energy, gamma, means, noise_energy=1.0, exact_min=False):
    """Approximate expected water level E[w_n(e_n)] of the slot with n = len(means) + 1 slots to go.

    Args:
        energy (float): Stored energy e_n.
        gamma (float): Current channel gain.
        means (LookaheadMeans): Conditional means of future harvests and inverse gains.
        noise_energy (float): Noise energy of the rate; 1 gives the normalized 1/gamma form.
        exact_min (bool): Minimize over every window instead of taking the whole horizon.

    Returns:
        WaterLevel: The level, whether the single-slot cap was hit, and the fixed-point residual.
    """
    harvest, inverse = _check(energy, gamma, means)
    floor = noise_energy / gamma
    floors = noise_energy * inverse

    result = _window_fixed_point(float(energy), floor, harvest, floors)
    if not exact_min:
        return result
    for width in range(harvest.size):
        candidate = _window_fixed_point(float(energy), floor, harvest[:width], floors[:width])
        if candidate.level < result.level:
            result = candidate
    return result


def _energy_for_excess(excess, gamma, means, noise_energy, exact_min):
    harvest, inverse = _check(0.0, gamma, means)
    floor = noise_energy / gamma
    floors = noise_energy * inverse
    excess = np.asarray(excess, dtype=float)
    flat = excess.reshape(1, -1)

    widths = range(harvest.size + 1) if exact_min else (harvest.size,)
    needed = excess
    for width in widths:
        h, c = harvest[:width], floors[:width]
        # window of width + 1 slots, written relative to the current floor
        window_energy = (
            (width + 1) * excess
            + width * floor
            + np.maximum(-excess, 0.0)
            + np.sum(np.maximum(c[:, None] - floor - flat, 0.0), axis=0).reshape(excess.shape)
            - np.sum(h)
            - np.sum(c)
        )
        needed = np.maximum(needed, window_energy)
    return np.maximum(needed, 0.0)


def water_level_energy(level, gamma, means, noise_energy=1.0, exact_min=False):
    """Smallest stored energy whose expected water level reaches `level`.

    The fixed-point relation is linear in the stored energy, so it is solved
    for e at the given level; the single-slot cap adds e >= level - noise / gain.
    """
    level = np.asarray(level, dtype=float)
    return _energy_for_excess(level - noise_energy / gamma, gamma, means, noise_energy, exact_min)


def invert_water_level(target_rho, gamma, means, noise_energy=1.0, max_energy=np.inf, exact_min=False):
    """Minimal stored energy at which the expected water level reaches target_rho + noise / gamma.

    Args:
        target_rho (float | np.ndarray): Per-slot drain(s) of the level(s) to reach.
        gamma (float): Current channel gain.
        means (LookaheadMeans): Conditional means of future harvests and inverse gains.
        noise_energy (float): Noise energy of the rate.
        max_energy (float): Grid ceiling; unreachable targets return it.
        exact_min (bool): Use the minimum over every window.

    Returns:
        Inversion | list[Inversion]: Energy and reachability, per target when an array is given.
    """
    targets = np.asarray(target_rho, dtype=float)
    energies = _energy_for_excess(targets, gamma, means, noise_energy, exact_min)
    reachable = energies <= max_energy
    clipped = np.minimum(energies, max_energy)
    if not np.all(reachable):
        logger.debug("water level target beyond the %g mJ ceiling", max_energy)
    if targets.ndim == 0:
        return Inversion(float(clipped), bool(reachable))
    return [Inversion(float(e), bool(r)) for e, r in zip(clipped, reachable)]


def water_level_approximation_gap(energy, gamma, means, noise_energy=1.0):
    """Difference between the whole-horizon and the exact minimum-over-windows water levels (>= 0)."""
    approximate = expected_water_level(energy, gamma, means, noise_energy).level
    exact = expected_water_level(energy, gamma, means, noise_energy, exact_min=True).level
    return approximate - exact
