from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import settings
from ..errors import DomainError

AGGREGATE_COLUMNS = ("policy", "N", "mean_throughput_bps", "se", "mean_delay_slots", "se", "oracle_gap_mean")
TRAJECTORY_COLUMNS = ("rep", "n", "e_mJ", "h_state", "gain", "rho_mW", "bits")


@dataclass(frozen=True, eq=False)
class ExperimentSpec:
    """One simulation cell: a problem, a horizon and the replications to run.

    Attributes:
        problem (Problem): Models and power set.
        horizon (int): N, the number of slots.
        reps (int): Replication count R.
        seed (int): Master seed; replication r of cell c draws from the stream (seed, c, r).
        initial_energy (float): e_N in mJ.
        initial_harvest (int | Sequence[float] | None): A harvest state index, a distribution over
            the states, or None for the stationary distribution.
        initial_channel (int | Sequence[float] | None): Same for the channel; None is uniform.
        policies (tuple[str]): Policy names.
        table (ValueTable, optional): Solved table reused by optimal-dp.
        cell (int): Cell index inside a sweep.
    """

    problem: object
    horizon: int = settings.HORIZON
    reps: int = settings.REPS
    seed: int = settings.SEED
    initial_energy: float = settings.INITIAL_ENERGY_MJ
    initial_harvest: object = None
    initial_channel: object = None
    policies: tuple = ("expected-threshold", "greedy")
    table: object = None
    cell: int = 0

    def __post_init__(self):
        if self.horizon < 1:
            raise DomainError("horizon must be at least one slot")
        if self.reps < 1:
            raise DomainError("replication count must be at least one")
        if self.initial_energy < 0:
            raise DomainError("initial energy must be nonnegative")
        object.__setattr__(self, "policies", tuple(self.policies))

    def harvest_start(self):
        """Distribution of the initial harvest state."""
        return _start(self.initial_harvest, self.problem.harvest.size, self.problem.harvest.stationary_distribution)

    def channel_start(self):
        """Distribution of the initial channel state."""
        size = self.problem.channel.size
        return _start(self.initial_channel, size, lambda: np.full(size, 1.0 / size))


def _start(choice, size, default):
    if choice is None:
        return np.asarray(default(), dtype=float)
    if np.isscalar(choice):
        if not 0 <= int(choice) < size:
            raise DomainError(f"initial state {choice} outside 0..{size - 1}")
        start = np.zeros(size)
        start[int(choice)] = 1.0
        return start
    start = np.asarray(choice, dtype=float)
    if start.shape != (size,) or np.any(start < 0) or abs(start.sum() - 1.0) > 1e-12:
        raise DomainError("initial state distribution must be a probability vector over the states")
    return start


@dataclass(frozen=True)
class PathSet:
    """Sampled harvest and channel paths, in time order (column 0 is slot N).

    Attributes:
        harvest_states (np.ndarray): Shape (R, N + 1); column t holds the state of H_{N-t}.
            The last column is H_0, drawn but never usable.
        harvests (np.ndarray): Harvest energies of those states, in mJ.
        channel_states (np.ndarray): Shape (R, N).
        gains (np.ndarray): Channel gains of those states.
    """

    harvest_states: np.ndarray
    harvests: np.ndarray
    channel_states: np.ndarray
    gains: np.ndarray

    @property
    def reps(self):
        return self.harvest_states.shape[0]

    @property
    def horizon(self):
        return self.channel_states.shape[1]

    def future_harvests(self):
        """H_{N-1}, ..., H_1 per replication: the harvests that can still be spent."""
        return self.harvests[:, 1:-1]


@dataclass(frozen=True)
class Trajectory:
    """Slot-by-slot record of one policy over a path set, time order.

    Attributes:
        policy (str): Policy name.
        energies (np.ndarray): Stored energy at the start of each slot, shape (R, N).
        powers (np.ndarray): Per-slot drains decided.
        bits (np.ndarray): Bits delivered per slot.
        clamps (int): Energy updates clamped at the grid ceiling.
    """

    policy: str
    energies: np.ndarray
    powers: np.ndarray
    bits: np.ndarray
    clamps: int = 0

    @property
    def totals(self):
        return self.bits.sum(axis=1)

    @property
    def consumed(self):
        return np.minimum(self.energies, self.powers).sum(axis=1)


@dataclass
class PolicySummary:
    """Aggregates of one policy in one cell.

    Attributes:
        policy (str): Policy name.
        horizon (int): N.
        mean_bits (float): Mean total bits over replications.
        se_bits (float): Standard error of mean_bits.
        mean_throughput_bps (float): mean_bits / (N * slot length).
        se_throughput_bps (float): Its standard error.
        mean_bits_per_slot (float): mean_bits / N.
        mean_delay_slots (float | None): Mean of the per-replication mean delays, None if none is defined.
        se_delay_slots (float | None): Its standard error.
        undefined_delays (int): Replications that delivered no bits.
        oracle_gap_mean (float): Mean offline-minus-online bits per second.
        oracle_gap_min (float): Smallest per-replication gap in bits (never below -slack).
        clamps (int): Ceiling clamps during the run.
        ratio_to_optimal (float | None): mean_bits over the optimal-dp mean, when that policy ran.
        totals (np.ndarray): Per-replication total bits.
    """

    policy: str
    horizon: int
    mean_bits: float
    se_bits: float
    mean_throughput_bps: float
    se_throughput_bps: float
    mean_bits_per_slot: float
    mean_delay_slots: Optional[float]
    se_delay_slots: Optional[float]
    undefined_delays: int
    oracle_gap_mean: float
    oracle_gap_min: float
    clamps: int
    ratio_to_optimal: Optional[float] = None
    totals: np.ndarray = field(default=None, repr=False)

    def row(self):
        """Row of the aggregate CSV, in AGGREGATE_COLUMNS order."""
        return [
            self.policy,
            self.horizon,
            self.mean_throughput_bps,
            self.se_throughput_bps,
            self.mean_delay_slots,
            self.se_delay_slots,
            self.oracle_gap_mean,
        ]


@dataclass
class SimOutcome:
    """Result of comparing several policies on one common path set.

    Attributes:
        spec (ExperimentSpec): The cell that produced it.
        summaries (dict[str, PolicySummary]): Per-policy aggregates, in run order.
        oracle_totals (np.ndarray): Offline-oracle total bits per replication.
        oracle_mean_bits (float): Their mean.
        dp_value (float | None): Expected optimal value V_N*(e_N, .) under the initial
            distribution, when optimal-dp ran.
        trajectories (dict[str, Trajectory]): Kept only when requested.
    """

    spec: ExperimentSpec
    summaries: dict
    oracle_totals: np.ndarray
    oracle_mean_bits: float
    dp_value: Optional[float] = None
    trajectories: dict = field(default_factory=dict, repr=False)

    def rows(self):
        return [summary.row() for summary in self.summaries.values()]
