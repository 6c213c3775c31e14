import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from ..dp_functions.backward_induction import backward_induct
from ..errors import DomainError
from .compare import compare

logger = logging.getLogger(__name__)


def sweep_specs(base, horizons):
    """One cell per horizon; cell c samples its paths from the streams (seed, c, r)."""
    horizons = sorted(set(int(n) for n in horizons))
    table = base.table
    if table is not None and table.horizon < horizons[-1]:
        raise DomainError(f"value table covers {table.horizon} slots, sweep needs {horizons[-1]}")
    if "optimal-dp" in base.policies and table is None:
        logger.info("solving the dynamic program once for %d slots", horizons[-1])
        table = backward_induct(base.problem, horizons[-1])
    return [replace(base, horizon=n, cell=c, table=table) for c, n in enumerate(horizons)]


def _compare_cell(args):
    spec, keep_trajectories = args
    return compare(spec, keep_trajectories=keep_trajectories)


def run_sweep(base, horizons, workers=1, keep_trajectories=False):
    """Compares the policies of `base` at every horizon.

    Cells are independent; with more than one worker they run in separate
    processes and come back in horizon order, identical to a serial run.

    Args:
        base (ExperimentSpec): Template cell; its horizon is replaced.
        horizons (Iterable[int]): Horizons N to evaluate.
        workers (int): Process count.
        keep_trajectories (bool): Keep per-policy trajectories.

    Returns:
        list[SimOutcome]: One outcome per horizon, ascending.
    """
    specs = sweep_specs(base, horizons)
    jobs = [(spec, keep_trajectories) for spec in specs]
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_compare_cell, jobs))
    else:
        outcomes = [_compare_cell(job) for job in jobs]
    for outcome in outcomes:
        logger.info(
            "N=%d: %s",
            outcome.spec.horizon,
            ", ".join(f"{s.policy} {s.mean_throughput_bps:.4g} b/s" for s in outcome.summaries.values()),
        )
    return outcomes
