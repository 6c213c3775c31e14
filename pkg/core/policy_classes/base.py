import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class PolicyContext:
    """What an online policy knows at the start of a slot.

    Attributes:
        slots_to_go (int): n, the number of slots left including this one.
        energy (float): Stored energy e_n in mJ.
        harvest_state (int): Index of the current harvest state.
        channel_state (int): Index of the current channel state.
        problem (Problem): Models and power set.
    """

    slots_to_go: int
    energy: float
    harvest_state: int = 0
    channel_state: int = 0
    problem: object = None

    def __post_init__(self):
        if self.slots_to_go < 1:
            raise DomainError("slots to go must be at least 1")
        if self.energy < 0:
            raise DomainError("stored energy must be nonnegative")


@dataclass(frozen=True)
class Decision:
    """A per-slot power decision.

    Attributes:
        power (float): Per-slot drain in mJ; may lie outside U for continuous policies.
        level_index (int | None): Index into the power levels when the decision is a member of U.
    """

    power: float
    level_index: Optional[int] = None


class Policy(ABC):
    """Online policy: a pure function of (n, stored energy, harvest state, channel state).

    Precomputed data (thresholds, fixed levels, tables) is built once and only
    read afterwards; lazily built entries are added under a lock.
    """

    name = "policy"

    def __init__(self, problem):
        self.problem = problem
        self._cache = {}
        self._lock = threading.Lock()

    @abstractmethod
    def decide_batch(self, slots_to_go, energy, harvest_state, channel_state):
        """Decisions for many replications in the same slot.

        Args:
            slots_to_go (int): n.
            energy (np.ndarray): Stored energies, shape (R,).
            harvest_state (np.ndarray): Harvest state indices, shape (R,).
            channel_state (np.ndarray): Channel state indices, shape (R,).

        Returns:
            np.ndarray: Per-slot drains, shape (R,).
        """

    def decide(self, ctx):
        """Decision for a single context."""
        power = float(
            self.decide_batch(
                ctx.slots_to_go,
                np.array([ctx.energy], dtype=float),
                np.array([ctx.harvest_state]),
                np.array([ctx.channel_state]),
            )[0]
        )
        return Decision(power, self.problem.power_set.level_index(power) if power > 0 else None)

    def _cached(self, key, build):
        if key in self._cache:
            return self._cache[key]
        value = build()
        with self._lock:
            self._cache.setdefault(key, value)
        return self._cache[key]

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_lock"] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"{type(self).__name__}()"


def largest_admissible(thresholds, energy, drains, fallback):
    """Largest level whose threshold does not exceed the stored energy.

    Args:
        thresholds (np.ndarray): Shape (R, M), thresholds per replication and level.
        energy (np.ndarray): Shape (R,).
        drains (np.ndarray): Shape (M,), increasing.
        fallback (float): Drain used where no level is admissible.
    """
    admissible = thresholds <= energy[:, None] + 1e-9
    any_ok = admissible.any(axis=1)
    top = drains.size - 1 - np.argmax(admissible[:, ::-1], axis=1)
    return np.where(any_ok, drains[top], fallback)
