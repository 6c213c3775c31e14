"""Reading and writing model definition files (YAML or JSON)."""

import json
import logging
from pathlib import Path

import yaml

from ..config import settings
from ..errors import ModelError, NoInputError
from ..ingest_functions.link_functions import build_power_rate_set
from ..model_classes.energy_grid import EnergyGrid
from ..model_classes.markov_chain import ChannelModel, HarvestModel
from ..model_classes.power_rate_set import ShannonRate
from ..model_classes.problem import build_problem

logger = logging.getLogger(__name__)

MODEL_SCHEMA = "ehsched-model/1"


def _power_set_from_sections(power_section, rate_section, slot_s):
    levels = power_section["levels_mW"]
    form = rate_section.get("form", "shannon")
    if form == "shannon" and "bits_scale" in rate_section:
        rate = ShannonRate(float(rate_section["bits_scale"]), float(rate_section["noise_energy_mJ"]))
        return build_power_rate_set(levels, slot_s=slot_s, rate=rate)
    if form == "shannon":
        return build_power_rate_set(
            levels,
            bandwidth_hz=float(rate_section.get("bandwidth_hz", settings.BANDWIDTH_HZ)),
            noise_psd_w_per_hz=float(rate_section.get("noise_psd_w_per_hz", settings.NOISE_PSD_W_PER_HZ)),
            slot_s=slot_s,
        )
    if form == "normalized":
        return build_power_rate_set(levels, slot_s=slot_s, rate=ShannonRate.normalized())
    raise ModelError(f"rate: unknown form {form!r} (expected 'shannon' or 'normalized')")


def problem_from_dict(document):
    """Builds a Problem from a parsed model definition.

    Args:
        document (dict): Sections harvest, power_set and optionally channel, grid, rate.

    Returns:
        Problem: The validated instance.
    """
    try:
        harvest_section = document["harvest"]
        power_section = document["power_set"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"model file is missing section {exc}") from exc

    slot_s = float(harvest_section.get("slot_s", 1.0))
    harvest = HarvestModel(harvest_section["states_mJ"], harvest_section["transitions"], slot_duration=slot_s)

    channel_section = document.get("channel")
    channel = (
        ChannelModel(channel_section["gains"], channel_section["transitions"])
        if channel_section
        else ChannelModel.static()
    )

    grid_section = document.get("grid") or {}
    grid = EnergyGrid(
        quantum=float(grid_section.get("quantum_mJ", settings.GRID_QUANTUM_MJ)),
        max_energy=float(grid_section.get("max_mJ", settings.GRID_MAX_MJ)),
    )

    power_set = _power_set_from_sections(power_section, document.get("rate") or {}, slot_s)

    idle = power_section.get("idle", "auto")
    idle = None if idle in (None, "auto") else bool(idle)
    return build_problem(harvest, power_set, grid, channel=channel, idle=idle)


def load_model_file(path):
    """Reads a model definition file.

    Raises:
        NoInputError: If the file does not exist.
        ModelError: If the document breaks a model invariant.
    """
    path = Path(path)
    if not path.is_file():
        raise NoInputError(f"model file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        document = yaml.safe_load(f)
    logger.debug("loaded model file %s", path)
    return problem_from_dict(document)


def problem_to_dict(problem, rate_section=None):
    """Model definition document describing a Problem."""
    rate = problem.power_set.rate
    if rate_section is None:
        rate_section = (
            {"form": "normalized"}
            if rate == ShannonRate.normalized()
            else {"form": "shannon", "bits_scale": rate.bits_scale, "noise_energy_mJ": rate.noise_energy_mj}
        )
    document = {
        "schema": MODEL_SCHEMA,
        "harvest": {
            "states_mJ": problem.harvest.states.tolist(),
            "transitions": problem.harvest.transitions.tolist(),
            "slot_s": problem.slot_s,
        },
        "power_set": {
            "levels_mW": problem.power_set.levels_mw.tolist(),
            "idle": problem.power_set.includes_idle,
        },
        "grid": {"quantum_mJ": problem.grid.quantum, "max_mJ": problem.grid.max_energy},
        "rate": rate_section,
    }
    if not problem.channel.is_static:
        document["channel"] = {
            "gains": problem.channel.gains.tolist(),
            "transitions": problem.channel.transitions.tolist(),
        }
    return document


def save_model_file(document, path):
    """Writes a model definition as sorted, indented JSON (byte-stable for equal input)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
