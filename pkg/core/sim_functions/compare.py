import logging
import math

import numpy as np

from ..errors import DominanceError
from ..offline_functions.stretched_string import solve_offline_fading_batch, solve_offline_static_batch
from ..policy_functions.registry import build_policy
from ..sim_classes.experiment import PolicySummary, SimOutcome
from .runner import mean_delays, run_policy
from .sampling import sample_paths

logger = logging.getLogger(__name__)

DOMINANCE_SLACK = 1e-9


def mean_and_se(samples):
    """Compensated mean and standard error (ddof=1; 0 for a single sample)."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        return None, None
    mean = math.fsum(samples) / samples.size
    if samples.size == 1:
        return mean, 0.0
    variance = math.fsum((samples - mean) ** 2) / (samples.size - 1)
    return mean, math.sqrt(variance / samples.size)


def offline_totals(problem, initial_energy, paths):
    """Offline-oracle total bits of every path: stretched string when static, water-filling when fading."""
    power_set = problem.power_set
    if problem.channel.is_static:
        powers = solve_offline_static_batch(initial_energy, paths.future_harvests())
        return power_set.bits(powers, 1.0).sum(axis=1)
    powers, _ = solve_offline_fading_batch(
        initial_energy, paths.future_harvests(), paths.gains, power_set.noise_energy
    )
    return power_set.bits(powers, paths.gains).sum(axis=1)


def check_dominance(policy, totals, oracle):
    """Raises DominanceError when any online total beats the offline total beyond the slack."""
    excess = totals - oracle - DOMINANCE_SLACK * np.maximum(1.0, oracle)
    broken = np.flatnonzero(excess > 0)
    if broken.size:
        r = int(broken[0])
        raise DominanceError(
            f"{policy} beats the offline oracle on {broken.size} path(s); "
            f"first at replication {r}: {totals[r]:.12g} > {oracle[r]:.12g} bits"
        )


def expected_dp_value(table, spec):
    """V_N*(e_N, h, gamma) averaged over the initial state distributions."""
    k = table.problem.grid.index(spec.initial_energy)
    layer = table.values[spec.horizon - 1, k]
    return float(spec.harvest_start() @ layer @ spec.channel_start())


def summarize(name, trajectory, oracle, spec, clamps):
    horizon = spec.horizon
    seconds = horizon * spec.problem.slot_s
    totals = trajectory.totals
    mean_bits, se_bits = mean_and_se(totals)

    delays = mean_delays(trajectory.bits)
    defined = delays[~np.isnan(delays)]
    undefined = int(delays.size - defined.size)
    if undefined:
        logger.info("%s: %d replication(s) delivered no bits and have no mean delay", name, undefined)
    mean_delay, se_delay = mean_and_se(defined)

    gaps = oracle - totals
    return PolicySummary(
        policy=name,
        horizon=horizon,
        mean_bits=mean_bits,
        se_bits=se_bits,
        mean_throughput_bps=mean_bits / seconds,
        se_throughput_bps=se_bits / seconds,
        mean_bits_per_slot=mean_bits / horizon,
        mean_delay_slots=mean_delay,
        se_delay_slots=se_delay,
        undefined_delays=undefined,
        oracle_gap_mean=math.fsum(gaps) / gaps.size / seconds,
        oracle_gap_min=float(gaps.min()),
        clamps=clamps,
        totals=totals,
    )


def compare(spec, keep_trajectories=False):
    """Runs every policy of a cell on one common path set and aggregates the results.

    Args:
        spec (ExperimentSpec): The cell.
        keep_trajectories (bool): Keep each policy's full trajectory in the outcome.

    Returns:
        SimOutcome: Per-policy summaries, oracle totals and the expected DP value.

    Raises:
        DominanceError: If any policy beats the offline oracle on some path.
    """
    problem = spec.problem
    paths = sample_paths(spec)
    oracle = offline_totals(problem, spec.initial_energy, paths)
    oracle_mean, _ = mean_and_se(oracle)

    table = spec.table
    dp_value = None
    summaries = {}
    trajectories = {}
    for name in spec.policies:
        policy = build_policy(name, problem, table=table, horizon=spec.horizon)
        trajectory = run_policy(policy, paths, spec)
        clamps = trajectory.clamps
        if name == "optimal-dp":
            table = policy.table
            dp_value = expected_dp_value(table, spec)
            clamps += policy.lookup_clamps.count
        if clamps:
            logger.warning("%s: %d energy value(s) clamped at the %g mJ ceiling", name, clamps, problem.grid.max_energy)

        check_dominance(name, trajectory.totals, oracle)
        summaries[name] = summarize(name, trajectory, oracle, spec, clamps)
        if keep_trajectories:
            trajectories[name] = trajectory
        logger.debug("%s: %.6g bits on average over %d slots", name, summaries[name].mean_bits, spec.horizon)

    optimal = summaries.get("optimal-dp")
    if optimal is not None and optimal.mean_bits > 0:
        for summary in summaries.values():
            summary.ratio_to_optimal = summary.mean_bits / optimal.mean_bits

    return SimOutcome(spec, summaries, oracle, oracle_mean, dp_value, trajectories)
