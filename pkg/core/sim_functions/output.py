"""CSV and JSON writers for simulation and solver results."""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from ..sim_classes.experiment import AGGREGATE_COLUMNS, TRAJECTORY_COLUMNS

AGGREGATE_SCHEMA = "ehsched-aggregate/1"
TRAJECTORY_SCHEMA = "ehsched-trajectory/1"
REPORT_SCHEMA = "ehsched-report/1"
FLOAT_FORMAT = "%.12g"


def _write_csv(frame, path, schema):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write(f"# schema: {schema}\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def aggregate_frame(outcomes):
    """One row per (policy, N) over a list of SimOutcome."""
    rows = [row for outcome in outcomes for row in outcome.rows()]
    return pd.DataFrame(rows, columns=list(AGGREGATE_COLUMNS))


def write_aggregate_csv(outcomes, path):
    """Writes the aggregate throughput/delay table, one row per (policy, N)."""
    return _write_csv(aggregate_frame(outcomes), path, AGGREGATE_SCHEMA)


def trajectory_frame(trajectory, paths, slot_s, limit=None):
    """Long-format slot records of the first `limit` replications."""
    reps, horizon = trajectory.bits.shape
    reps = reps if limit is None else min(reps, limit)
    rep_index = np.repeat(np.arange(reps), horizon)
    slots_to_go = np.tile(np.arange(horizon, 0, -1), reps)
    return pd.DataFrame(
        {
            "rep": rep_index,
            "n": slots_to_go,
            "e_mJ": trajectory.energies[:reps].ravel(),
            "h_state": paths.harvest_states[:reps, :horizon].ravel(),
            "gain": paths.gains[:reps].ravel(),
            "rho_mW": trajectory.powers[:reps].ravel() / slot_s,
            "bits": trajectory.bits[:reps].ravel(),
        },
        columns=list(TRAJECTORY_COLUMNS),
    )


def write_trajectory_csv(trajectory, paths, slot_s, path, limit=None):
    return _write_csv(trajectory_frame(trajectory, paths, slot_s, limit), path, TRAJECTORY_SCHEMA)


def write_json(document, path, schema=REPORT_SCHEMA):
    """Writes a JSON document with a schema stamp, sorted keys and a trailing newline."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"schema": schema, **document}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_aggregate_csv(path):
    """Reads an aggregate CSV back; the duplicate `se` columns come back as `se` and `se.1`."""
    return pd.read_csv(path, comment="#")
