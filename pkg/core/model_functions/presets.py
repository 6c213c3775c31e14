"""Ready-made instances from the evaluation setup."""

from ..config import settings
from ..model_classes.markov_chain import HarvestModel
from ..model_classes.power_rate_set import PowerRateSet, ShannonRate

WIFI_LEVELS_MW = (5, 10, 23, 26, 74, 100, 159, 256)
BURST_STATES_MJ = (0.0, 256.0)
BURST_TRANSITIONS = ((0.9, 0.1), (0.5, 0.5))


def burst_harvest_model(slot_s=1.0):
    """Two-state bursty harvest chain: h = {0, 256} mJ, q00 = 0.9, q11 = 0.5."""
    return HarvestModel(BURST_STATES_MJ, BURST_TRANSITIONS, slot_duration=slot_s)


def wifi_power_set(slot_s=1.0, bandwidth_hz=None, noise_psd_w_per_hz=None, includes_idle=False):
    """The eight 802.11n single-stream power levels with a Shannon rate."""
    rate = ShannonRate.from_link(
        bandwidth_hz if bandwidth_hz is not None else settings.BANDWIDTH_HZ,
        noise_psd_w_per_hz if noise_psd_w_per_hz is not None else settings.NOISE_PSD_W_PER_HZ,
        slot_s,
    )
    return PowerRateSet(WIFI_LEVELS_MW, slot_s=slot_s, rate=rate, includes_idle=includes_idle)


def normalized_power_set(levels, slot_s=1.0, includes_idle=False):
    """Power set with g(x) = log2(1 + x), convenient for hand-checkable numbers."""
    return PowerRateSet(levels, slot_s=slot_s, rate=ShannonRate.normalized(), includes_idle=includes_idle)
