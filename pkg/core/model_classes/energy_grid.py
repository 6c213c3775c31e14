from dataclasses import dataclass

import numpy as np

from ..errors import ModelError, OffGridError

ON_GRID_TOL = 1e-9


class ClampCounter:
    """Counts energy updates that hit the grid ceiling."""

    def __init__(self):
        self.count = 0

    def add(self, hits):
        self.count += int(hits)


@dataclass(frozen=True)
class EnergyGrid:
    """Quantized stored-energy axis {0, quantum, 2*quantum, ..., max_energy}.

    The ceiling is a numerical truncation, not a battery: updates above it are
    clamped and counted so that callers can raise it.

    Attributes:
        quantum (float): Grid step in millijoules.
        max_energy (float): Grid ceiling in millijoules, a multiple of the quantum.
    """

    quantum: float = 1.0
    max_energy: float = 4096.0

    def __post_init__(self):
        if self.quantum <= 0:
            raise ModelError("grid: quantum must be positive")
        if self.max_energy < self.quantum:
            raise ModelError("grid: ceiling must be at least one quantum")
        if not self.is_on_grid(self.max_energy):
            raise OffGridError(f"grid: ceiling {self.max_energy:g} is not a multiple of {self.quantum:g}")

    @property
    def size(self):
        return int(round(self.max_energy / self.quantum)) + 1

    @property
    def energies(self):
        return np.arange(self.size) * self.quantum

    def is_on_grid(self, energy):
        ratio = np.asarray(energy, dtype=float) / self.quantum
        return bool(np.all(np.abs(ratio - np.round(ratio)) <= ON_GRID_TOL))

    def units(self, energy, what="energy"):
        """Converts on-grid energies to integer multiples of the quantum.

        Raises:
            OffGridError: If any value is not a multiple of the quantum.
        """
        if not self.is_on_grid(energy):
            raise OffGridError(f"{what} {np.asarray(energy).tolist()} is not a multiple of the {self.quantum:g} mJ quantum")
        return np.round(np.asarray(energy, dtype=float) / self.quantum).astype(np.int64)

    def snap(self, energy):
        """Rounds energies to the nearest grid point.

        Returns:
            tuple[np.ndarray, float]: Snapped values and the largest absolute rounding error.
        """
        energy = np.asarray(energy, dtype=float)
        snapped = np.round(energy / self.quantum) * self.quantum
        error = float(np.max(np.abs(snapped - energy))) if energy.size else 0.0
        return snapped, error

    def index(self, energy, counter=None):
        """Nearest grid index of each energy, clamped to the ceiling."""
        raw = np.rint(np.asarray(energy, dtype=float) / self.quantum).astype(np.int64)
        over = raw > self.size - 1
        if counter is not None:
            counter.add(np.count_nonzero(over))
        return np.clip(raw, 0, self.size - 1)
