"""Harvest chains estimated from irradiance traces."""

import logging
from typing import NamedTuple

import numpy as np

from ..errors import TraceFormatError
from ..ingest_classes.trace_manager import IRRADIANCE_COLUMN, TIME_COLUMN, IrradianceTraceManager
from ..model_classes.markov_chain import HarvestModel

logger = logging.getLogger(__name__)

DEGENERATE_SPREAD = 1e-9


class SlotSeries(NamedTuple):
    slot_index: np.ndarray
    energy_mj: np.ndarray


class ChainEstimate(NamedTuple):
    """Estimated harvest chain plus the statistics behind it.

    Attributes:
        model (HarvestModel): Bin-center states and smoothed transition matrix.
        row_counts (np.ndarray): Observed transitions out of each state.
        edges (np.ndarray): Bin edges in mJ.
        slots (int): Number of resampled slots.
        smoothed_rows (list[int]): States whose rows had no observation and were smoothed.
    """

    model: HarvestModel
    row_counts: np.ndarray
    edges: np.ndarray
    slots: int
    smoothed_rows: list


def slot_energies(frame, spec):
    """Resamples a trace to slots and converts mean irradiance to harvested mJ per slot.

    Slots without samples are skipped; their neighbours are not treated as consecutive.
    """
    times = frame[TIME_COLUMN].to_numpy(dtype=float)
    slots = np.floor((times - times[0]) / spec.slot_s).astype(np.int64)
    mean_irradiance = frame.groupby(slots)[IRRADIANCE_COLUMN].mean()
    return SlotSeries(
        mean_irradiance.index.to_numpy(),
        mean_irradiance.to_numpy(dtype=float) * spec.mj_per_slot_per_w_m2,
    )


def estimate_chain(series, bins, slot_s):
    """Equal-width binning of slot energies and transition counting.

    Args:
        series (SlotSeries): Slot indices and energies.
        bins (int): Number of states.
        slot_s (float): Slot length of the resulting model.

    Returns:
        ChainEstimate: The estimated chain.
    """
    energy = series.energy_mj
    low, high = float(energy.min()), float(energy.max())
    if high - low <= DEGENERATE_SPREAD * max(1.0, abs(high)):
        logger.warning("trace energy is constant (%.6g mJ/slot); building a one-state model", low)
        model = HarvestModel([float(energy.mean())], [[1.0]], slot_duration=slot_s)
        pairs = int(np.count_nonzero(np.diff(series.slot_index) == 1))
        return ChainEstimate(model, np.array([pairs]), np.array([low, high]), energy.size, [])

    edges = np.linspace(low, high, bins + 1)
    width = (high - low) / bins
    state = np.minimum(((energy - low) / width).astype(np.int64), bins - 1)

    consecutive = np.diff(series.slot_index) == 1
    counts = np.zeros((bins, bins))
    np.add.at(counts, (state[:-1][consecutive], state[1:][consecutive]), 1.0)
    row_counts = counts.sum(axis=1)
    smoothed = np.flatnonzero(row_counts == 0).tolist()
    if smoothed:
        logger.warning("no transitions observed out of state(s) %s; using uniform rows", smoothed)
        counts[smoothed] += 1.0

    centers = 0.5 * (edges[:-1] + edges[1:])
    model = HarvestModel(centers, counts / counts.sum(axis=1, keepdims=True), slot_duration=slot_s)
    return ChainEstimate(model, row_counts.astype(np.int64), edges, energy.size, smoothed)


def ingest_trace(spec):
    """Reads a trace and estimates its harvest chain with statistics.

    Raises:
        TraceFormatError: On malformed rows or a trace shorter than two slots.
    """
    frame = IrradianceTraceManager(spec).read_data()
    series = slot_energies(frame, spec)
    if series.energy_mj.size < 2:
        raise TraceFormatError(f"{spec.path}: trace spans fewer than two {spec.slot_s:g} s slots")
    estimate = estimate_chain(series, spec.bins, spec.slot_s)
    logger.info(
        "estimated %d-state harvest chain from %d slots; transitions per state: %s",
        estimate.model.size,
        estimate.slots,
        estimate.row_counts.tolist(),
    )
    return estimate


def trace_to_markov(spec):
    """First-order harvest chain of an irradiance trace.

    Args:
        spec (TraceSpec): Trace and conversion constants.

    Returns:
        HarvestModel: Bin-center states in mJ per slot.
    """
    return ingest_trace(spec).model
