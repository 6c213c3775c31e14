import logging

import numpy as np
import pytest

from core.model_classes.energy_grid import EnergyGrid
from core.model_classes.markov_chain import ChannelModel, HarvestModel
from core.model_classes.problem import build_problem
from core.model_functions.presets import burst_harvest_model, normalized_power_set, wifi_power_set

BURST_MODEL_YAML = """\
harvest:
  states_mJ: [0, 256]
  transitions: [[0.9, 0.1], [0.5, 0.5]]
  slot_s: 1
power_set:
  levels_mW: [5, 10, 23, 26, 74, 100, 159, 256]
  idle: auto
grid:
  quantum_mJ: 1
  max_mJ: 4096
rate:
  form: shannon
  bandwidth_hz: 40000000
  noise_psd_w_per_hz: 0.83e-9
"""


@pytest.fixture
def burst_problem():
    """Bursty two-state harvests with the eight 802.11n levels on a 1 mJ grid."""
    return build_problem(burst_harvest_model(), wifi_power_set(), EnergyGrid(1.0, 4096.0))


@pytest.fixture
def small_problem():
    """Hand-sized instance with the normalized rate."""
    harvest = HarvestModel([0.0, 2.0], [[0.7, 0.3], [0.4, 0.6]])
    return build_problem(harvest, normalized_power_set([1.0, 2.0, 4.0]), EnergyGrid(1.0, 24.0))


@pytest.fixture
def fading_problem():
    harvest = HarvestModel([0.0, 3.0], [[0.5, 0.5], [0.5, 0.5]])
    channel = ChannelModel([0.1, 1.9], [[0.5, 0.5], [0.5, 0.5]])
    return build_problem(harvest, normalized_power_set([1.0, 2.0, 4.0]), EnergyGrid(1.0, 32.0), channel=channel)


@pytest.fixture
def burst_model_file(tmp_path):
    path = tmp_path / "burst.yaml"
    path.write_text(BURST_MODEL_YAML, encoding="utf-8")
    return path


@pytest.fixture
def write_trace(tmp_path):
    """Writes an irradiance CSV from (timestamp, irradiance) rows or raw lines."""

    def _write(rows, name="trace.csv"):
        path = tmp_path / name
        lines = ["timestamp_s,irradiance_w_m2"]
        for row in rows:
            lines.append(row if isinstance(row, str) else f"{row[0]},{row[1]}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def rng():
    return np.random.default_rng(20130613)


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Undoes any handler or level the command line installed during a test."""
    yield
    logger = logging.getLogger("core")
    logger.setLevel(logging.NOTSET)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
