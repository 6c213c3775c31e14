import logging
import threading

import numpy as np
from scipy.linalg import null_space

from ..errors import ChainError, ModelError

logger = logging.getLogger(__name__)

ROW_SUM_TOL = 1e-12


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


class MarkovChain:
    """Finite-state first-order Markov chain over real-valued states.

    Row i of the transition matrix holds the distribution of the next state
    given the current state i. Matrix powers are cached; the cache only grows
    and is guarded by a lock, so concurrent readers always see finished
    matrices.

    Args:
        values (Sequence[float]): State values, strictly increasing.
        transitions (Sequence[Sequence[float]]): Row-stochastic matrix.
        name (str): Label used in error messages.
    """

    def __init__(self, values, transitions, name="chain"):
        self.name = name
        self.values = _frozen(values)
        self.transitions = _frozen(transitions)
        self._validate()
        self._powers = [_frozen(np.eye(self.size))]
        self._lock = threading.Lock()
        self._stationary = None

    def _validate(self):
        values, matrix = self.values, self.transitions
        if values.ndim != 1 or values.size == 0:
            raise ModelError(f"{self.name}: states must be a non-empty list")
        if np.any(np.diff(values) <= 0):
            raise ModelError(f"{self.name}: states must be strictly increasing, got {values.tolist()}")
        if matrix.shape != (values.size, values.size):
            raise ModelError(
                f"{self.name}: transition matrix shape {matrix.shape} does not match {values.size} states"
            )
        if np.any(matrix < 0):
            raise ModelError(f"{self.name}: transition probabilities must be nonnegative")
        row_error = np.abs(matrix.sum(axis=1) - 1.0)
        if np.any(row_error > ROW_SUM_TOL):
            bad = int(np.argmax(row_error))
            raise ModelError(f"{self.name}: row {bad} sums to {matrix[bad].sum():.15g}, not 1")

    @property
    def size(self):
        return self.values.size

    def transition_power(self, k):
        """Returns the k-step transition matrix Q^k (cached, read-only)."""
        if k < 0:
            raise ValueError("matrix power must be nonnegative")
        if k < len(self._powers):
            return self._powers[k]
        with self._lock:
            while len(self._powers) <= k:
                self._powers.append(_frozen(self._powers[-1] @ self.transitions))
        return self._powers[k]

    def conditional_mean(self, state, lookahead, values=None):
        """Expected state value `lookahead` steps ahead given the current state index."""
        values = self.values if values is None else np.asarray(values, dtype=float)
        return float(self.transition_power(lookahead)[state] @ values)

    def lookahead_means(self, depth, values=None):
        """Table of conditional means for every lookahead up to `depth`.

        Returns:
            np.ndarray: Array of shape (depth + 1, size); row d holds Q^d @ values.
        """
        values = self.values if values is None else np.asarray(values, dtype=float)
        self.transition_power(depth)
        return np.stack([self._powers[d] @ values for d in range(depth + 1)])

    def stationary_distribution(self):
        """Unique stationary distribution, as the normalized left null vector of Q - I.

        Raises:
            ChainError: If the chain has more than one recurrent class.
        """
        if self._stationary is not None:
            return self._stationary

        basis = null_space((self.transitions - np.eye(self.size)).T)
        if basis.shape[1] != 1:
            raise ChainError(
                f"{self.name}: chain is reducible ({basis.shape[1]} recurrent classes), "
                "stationary distribution is not unique"
            )
        pi = basis[:, 0]
        pi = np.clip(pi / pi.sum(), 0.0, None)
        pi = pi / pi.sum()

        moduli = np.abs(np.linalg.eigvals(self.transitions))
        if np.sum(np.isclose(moduli, 1.0, atol=1e-10)) > 1:
            logger.warning("%s: chain is periodic; conditional means will not converge", self.name)

        self._stationary = _frozen(pi)
        return self._stationary

    def stationary_mean(self, values=None):
        values = self.values if values is None else np.asarray(values, dtype=float)
        return float(self.stationary_distribution() @ values)

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_lock"] = None
        state["_powers"] = self._powers[:1]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"{type(self).__name__}(values={self.values.tolist()}, transitions={self.transitions.tolist()})"


class HarvestModel(MarkovChain):
    """Markov chain over per-slot harvest energies.

    Args:
        states (Sequence[float]): Harvest energies h_i in millijoules per slot.
        transitions (Sequence[Sequence[float]]): q_ij = P(next harvest h_j | current h_i).
        slot_duration (float): Slot length in seconds.
    """

    def __init__(self, states, transitions, slot_duration=1.0):
        super().__init__(states, transitions, name="harvest")
        if np.any(self.values < 0):
            raise ModelError("harvest: energies must be nonnegative")
        if slot_duration <= 0:
            raise ModelError("harvest: slot duration must be positive")
        self.slot_duration = float(slot_duration)

    @property
    def states(self):
        return self.values


class ChannelModel(MarkovChain):
    """Markov chain over channel power gains.

    Args:
        gains (Sequence[float]): Gains gamma_u, positive and strictly increasing.
        transitions (Sequence[Sequence[float]]): f_uv = P(next gain gamma_v | current gamma_u).
    """

    def __init__(self, gains, transitions):
        super().__init__(gains, transitions, name="channel")
        if np.any(self.values <= 0):
            raise ModelError("channel: gains must be positive")

    @classmethod
    def static(cls):
        """Single-state unit-gain channel, the non-fading problem."""
        return cls([1.0], [[1.0]])

    @property
    def gains(self):
        return self.values

    @property
    def inverse_gains(self):
        return 1.0 / self.values

    @property
    def is_static(self):
        return self.size == 1 and self.values[0] == 1.0
