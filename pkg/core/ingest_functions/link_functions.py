"""Power sets and discretized fading channels."""

import logging

import numpy as np
from scipy import stats

from ..config import settings
from ..errors import DomainError
from ..model_classes.markov_chain import ChannelModel
from ..model_classes.power_rate_set import PowerRateSet, ShannonRate

logger = logging.getLogger(__name__)

FADING_KINDS = ("rayleigh", "nakagami")


def build_power_rate_set(levels_mw, bandwidth_hz=None, noise_psd_w_per_hz=None, slot_s=1.0, rate=None):
    """Power set with a Shannon rate of the given link.

    Args:
        levels_mw (Sequence[float]): Strictly increasing power levels.
        bandwidth_hz (float, optional): Defaults to the configured bandwidth.
        noise_psd_w_per_hz (float, optional): Defaults to the configured noise density.
        slot_s (float): Slot length.
        rate (ShannonRate, optional): Overrides the link-derived rate.

    Raises:
        ModelError: On non-increasing levels or a pair whose bits per energy do not decrease.
    """
    if rate is None:
        rate = ShannonRate.from_link(
            bandwidth_hz if bandwidth_hz is not None else settings.BANDWIDTH_HZ,
            noise_psd_w_per_hz if noise_psd_w_per_hz is not None else settings.NOISE_PSD_W_PER_HZ,
            slot_s,
        )
    return PowerRateSet(levels_mw, slot_s=slot_s, rate=rate)


def gain_weights(kind, gains, shape=None):
    """Normalized density weights of the power gain at the given points.

    Rayleigh fading has an exponential power gain with unit mean; Nakagami-m has a
    gamma power gain with shape m and unit mean.
    """
    if kind == "rayleigh":
        density = stats.expon.pdf(gains)
    elif kind == "nakagami":
        m = shape if shape is not None else settings.NAKAGAMI_SHAPE
        if m < 0.5:
            raise DomainError("nakagami shape must be at least 0.5")
        density = stats.gamma.pdf(gains, a=m, scale=1.0 / m)
    else:
        raise DomainError(f"unknown fading kind {kind!r}; expected one of {', '.join(FADING_KINDS)}")
    return density / density.sum()


def build_fading_model(kind="rayleigh", num_levels=None, gain_range=None, mixing=None, shape=None):
    """Discrete Markov fading channel.

    Gains sit evenly over `gain_range`; the stationary probabilities are the
    fading density at those points, normalized; F = (1 - m) I + m 1 pi^T, so
    m = 1 gives independent gains and small m slow fading.

    Args:
        kind (str): "rayleigh" or "nakagami".
        num_levels (int, optional): Number of gains.
        gain_range (tuple[float, float], optional): Smallest and largest gain.
        mixing (float, optional): m in (0, 1].
        shape (float, optional): Nakagami shape.

    Returns:
        ChannelModel: The chain; a single level sits at the middle of the range.
    """
    num_levels = num_levels if num_levels is not None else settings.FADING_LEVELS
    low, high = gain_range if gain_range is not None else (settings.GAIN_MIN, settings.GAIN_MAX)
    mixing = mixing if mixing is not None else settings.FADING_MIXING
    if num_levels < 1:
        raise DomainError("at least one gain level is required")
    if not 0 < low <= high:
        raise DomainError("gain range must be positive and ordered")
    if not 0 < mixing <= 1:
        raise DomainError("mixing must lie in (0, 1]")

    if num_levels == 1:
        return ChannelModel([0.5 * (low + high)], [[1.0]])
    if low == high:
        raise DomainError("several gain levels need a nonempty range")

    gains = np.linspace(low, high, num_levels)
    weights = gain_weights(kind, gains, shape)
    transitions = (1.0 - mixing) * np.eye(num_levels) + mixing * np.tile(weights, (num_levels, 1))
    logger.debug("%s channel: gains %s, weights %s", kind, np.round(gains, 4).tolist(), np.round(weights, 4).tolist())
    return ChannelModel(gains, transitions)
