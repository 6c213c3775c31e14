import logging
from pathlib import Path

import click

from ..config import settings
from ..dp_classes.value_table import ValueTable
from ..errors import EX_OK
from ..model_functions.model_file import load_model_file
from ..policy_functions.registry import parse_policy_names
from ..sim_classes.experiment import ExperimentSpec
from ..sim_functions.output import write_aggregate_csv, write_json, write_trajectory_csv
from ..sim_functions.sampling import sample_paths
from ..sim_functions.sweep import run_sweep
from .options import model_option, out_option, parse_horizons, seed_option

logger = logging.getLogger(__name__)

AGGREGATE_FILE = "aggregate.csv"
SUMMARY_FILE = "summary.json"


def _simulate(model_path, horizon, reps, seed, policies, sweep_horizons, out_dir, dump_trajectories,
              initial_energy, table_path, workers):
    problem = load_model_file(model_path)
    names = parse_policy_names(policies)
    table = ValueTable.load(table_path, problem) if table_path is not None else None
    horizons = sweep_horizons if sweep_horizons else [horizon]

    base = ExperimentSpec(
        problem,
        horizon=horizons[0],
        reps=reps,
        seed=seed,
        initial_energy=initial_energy,
        policies=names,
        table=table,
    )
    outcomes = run_sweep(base, horizons, workers=workers, keep_trajectories=dump_trajectories > 0)

    aggregate_path = write_aggregate_csv(outcomes, out_dir / AGGREGATE_FILE)
    write_json({"cells": [_cell_summary(outcome) for outcome in outcomes]}, out_dir / SUMMARY_FILE)
    if dump_trajectories > 0:
        for outcome in outcomes:
            paths = sample_paths(outcome.spec)
            for name, trajectory in outcome.trajectories.items():
                write_trajectory_csv(
                    trajectory,
                    paths,
                    problem.slot_s,
                    out_dir / f"trajectories_{name}_N{outcome.spec.horizon}.csv",
                    limit=dump_trajectories,
                )
    logger.info("wrote %s", aggregate_path)
    return EX_OK


def _cell_summary(outcome):
    return {
        "N": outcome.spec.horizon,
        "reps": outcome.spec.reps,
        "oracle_mean_bits": outcome.oracle_mean_bits,
        "dp_value_bits": outcome.dp_value,
        "policies": {
            name: {
                "mean_bits": s.mean_bits,
                "se_bits": s.se_bits,
                "mean_bits_per_slot": s.mean_bits_per_slot,
                "mean_throughput_bps": s.mean_throughput_bps,
                "mean_delay_slots": s.mean_delay_slots,
                "undefined_delays": s.undefined_delays,
                "oracle_gap_min_bits": s.oracle_gap_min,
                "clamps": s.clamps,
                "ratio_to_optimal": s.ratio_to_optimal,
            }
            for name, s in outcome.summaries.items()
        },
    }


def _simulation_options(command):
    options = [
        model_option,
        click.option("--horizon", default=settings.HORIZON, show_default=True, type=click.IntRange(min=1)),
        click.option("--reps", default=settings.REPS, show_default=True, type=click.IntRange(min=1)),
        seed_option,
        click.option("--policies", default="all", show_default=True, help="Comma-separated policy names or 'all'."),
        click.option("--sweep-horizons", callback=parse_horizons, help="Comma-separated horizons, e.g. 10,20,30."),
        out_option,
        click.option("--dump-trajectories", default=0, show_default=True, type=click.IntRange(min=0),
                     help="Write the slot records of the first K replications."),
        click.option("--initial-energy", default=settings.INITIAL_ENERGY_MJ, show_default=True,
                     type=click.FloatRange(min=0), help="Stored energy e_N in mJ."),
        click.option("--table", "table_path", type=click.Path(dir_okay=False, path_type=Path),
                     help="Solved value table reused by optimal-dp."),
        click.option("--workers", default=settings.WORKERS, show_default=True, type=click.IntRange(min=1)),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.command("simulate")
@_simulation_options
def cmd_simulate(**kwargs):
    """Monte Carlo comparison of online policies against the offline oracle."""
    return _simulate(**kwargs)


@click.command("compare")
@_simulation_options
def cmd_compare(**kwargs):
    """Same as simulate, with at least two policies."""
    if len(parse_policy_names(kwargs["policies"])) < 2:
        raise click.UsageError("compare needs at least two policies")
    return _simulate(**kwargs)
