import logging
import math
from pathlib import Path

import click

from ..config import settings
from ..errors import EX_OK
from ..ingest_classes.trace_manager import TraceSpec
from ..ingest_functions.trace_functions import ingest_trace
from ..model_functions.model_file import MODEL_SCHEMA, problem_from_dict, save_model_file
from ..model_functions.presets import WIFI_LEVELS_MW

logger = logging.getLogger(__name__)


def model_document(estimate, spec, quantum):
    """Model definition of an estimated harvest chain with the 802.11n power levels."""
    largest = max(float(estimate.model.states.max()), max(WIFI_LEVELS_MW) * spec.slot_s)
    ceiling = quantum * math.ceil(max(settings.GRID_MAX_MJ, 2.0 * largest) / quantum)
    return {
        "schema": MODEL_SCHEMA,
        "harvest": {
            "states_mJ": estimate.model.states.tolist(),
            "transitions": estimate.model.transitions.tolist(),
            "slot_s": spec.slot_s,
        },
        "power_set": {"levels_mW": list(WIFI_LEVELS_MW), "idle": "auto"},
        "grid": {"quantum_mJ": quantum, "max_mJ": ceiling},
        "rate": {
            "form": "shannon",
            "bandwidth_hz": settings.BANDWIDTH_HZ,
            "noise_psd_w_per_hz": settings.NOISE_PSD_W_PER_HZ,
        },
        "ingest": {
            "source": spec.path.name,
            "slots": estimate.slots,
            "row_sample_counts": estimate.row_counts.tolist(),
            "smoothed_rows": estimate.smoothed_rows,
            "bin_edges_mJ": estimate.edges.tolist(),
            "panel_area_cm2": spec.panel_area_cm2,
            "efficiency": spec.efficiency,
        },
    }


@click.command("ingest-trace")
@click.option("--trace", "trace_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="CSV with columns timestamp_s,irradiance_w_m2.")
@click.option("--out", "out_path", default="model.json", show_default=True,
              type=click.Path(dir_okay=False, path_type=Path), help="Model definition file to write.")
@click.option("--bins", default=settings.TRACE_BINS, show_default=True, type=click.IntRange(min=1))
@click.option("--slot", "slot_s", default=settings.TRACE_SLOT_S, show_default=True, type=click.FloatRange(min=0, min_open=True))
@click.option("--area", "panel_area_cm2", default=settings.PANEL_AREA_CM2, show_default=True,
              type=click.FloatRange(min=0, min_open=True))
@click.option("--efficiency", default=settings.EFFICIENCY, show_default=True,
              type=click.FloatRange(min=0, max=1, min_open=True))
@click.option("--quantum", default=settings.GRID_QUANTUM_MJ, show_default=True,
              type=click.FloatRange(min=0, min_open=True), help="Energy grid step in mJ.")
def cmd_ingest(trace_path, out_path, bins, slot_s, panel_area_cm2, efficiency, quantum):
    """Estimates a harvest chain from an irradiance trace and writes a model file."""
    spec = TraceSpec(trace_path, panel_area_cm2=panel_area_cm2, efficiency=efficiency, slot_s=slot_s, bins=bins)
    estimate = ingest_trace(spec)
    document = model_document(estimate, spec, quantum)
    problem_from_dict(document)
    save_model_file(document, out_path)
    logger.info("wrote %d-state model to %s", estimate.model.size, out_path)
    return EX_OK
