import hashlib
import json
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import ModelError

MILLI = 1e3


@dataclass(frozen=True)
class ShannonRate:
    """Concave rate map g(x) = scale * log2(1 + x / noise) from per-slot energy to bits per slot.

    Attributes:
        bits_scale (float): Bits per slot per unit of log2 capacity (bandwidth times slot length).
        noise_energy_mj (float): Noise energy over one slot, in the same unit as the drain.
    """

    bits_scale: float = 1.0
    noise_energy_mj: float = 1.0

    def __post_init__(self):
        if self.bits_scale <= 0 or self.noise_energy_mj <= 0:
            raise ModelError("rate: scale and noise energy must be positive")

    @classmethod
    def from_link(cls, bandwidth_hz, noise_psd_w_per_hz, slot_s):
        """Builds the rate of an AWGN link whose per-slot drain is measured in millijoules."""
        return cls(
            bits_scale=bandwidth_hz * slot_s,
            noise_energy_mj=noise_psd_w_per_hz * bandwidth_hz * slot_s * MILLI,
        )

    @classmethod
    def normalized(cls):
        return cls(1.0, 1.0)

    def __call__(self, energy):
        return self.bits_scale * np.log2(1.0 + np.asarray(energy, dtype=float) / self.noise_energy_mj)

    def to_dict(self):
        return {"form": "shannon", "bits_scale": self.bits_scale, "noise_energy_mj": self.noise_energy_mj}


@dataclass(frozen=True, eq=False)
class PowerRateSet:
    """Discrete set U of transmit power levels together with the rate function.

    Attributes:
        levels_mw (np.ndarray): Strictly increasing positive power levels in milliwatts.
        slot_s (float): Slot length; a level's per-slot drain is levels_mw * slot_s millijoules.
        rate (ShannonRate): Rate map g applied to (gain times) per-slot drain.
        includes_idle (bool): Whether the zero-power defer action is available.
    """

    levels_mw: np.ndarray
    slot_s: float = 1.0
    rate: ShannonRate = field(default_factory=ShannonRate.normalized)
    includes_idle: bool = False

    def __post_init__(self):
        levels = np.array(self.levels_mw, dtype=float)
        levels.setflags(write=False)
        object.__setattr__(self, "levels_mw", levels)
        if levels.ndim != 1 or levels.size == 0:
            raise ModelError("power set: at least one level is required")
        if self.slot_s <= 0:
            raise ModelError("power set: slot length must be positive")
        if np.any(levels <= 0):
            raise ModelError("power set: levels must be positive")
        for low, high in zip(levels[:-1], levels[1:]):
            if high <= low:
                raise ModelError(f"power set: levels must be strictly increasing ({low:g} then {high:g} mW)")

        drains = self.drains
        efficiency = self.rate(drains) / drains
        for m in range(drains.size - 1):
            if efficiency[m + 1] >= efficiency[m]:
                raise ModelError(
                    f"power set: bits per energy must decrease over levels, "
                    f"but {levels[m]:g} mW gives {efficiency[m]:.6g} and {levels[m + 1]:g} mW gives {efficiency[m + 1]:.6g}"
                )

    @property
    def drains(self):
        """Per-slot energy consumed by each level, in millijoules."""
        return self.levels_mw * self.slot_s

    @property
    def actions(self):
        """Per-slot drains of every action, idle (0) first when enabled."""
        if self.includes_idle:
            return np.concatenate(([0.0], self.drains))
        return self.drains

    @property
    def rho_min(self):
        return float(self.drains[0])

    @property
    def rho_max(self):
        return float(self.drains[-1])

    @property
    def noise_energy(self):
        return self.rate.noise_energy_mj

    def bits(self, drain, gamma=1.0):
        """Bits of a full slot at the given per-slot drain and channel gain."""
        return self.rate(np.asarray(gamma, dtype=float) * np.asarray(drain, dtype=float))

    def level_index(self, drain):
        """Index into the levels of a drain that is a member of U, else None."""
        hits = np.flatnonzero(np.isclose(self.drains, drain, rtol=1e-12, atol=1e-12))
        return int(hits[0]) if hits.size else None

    def with_idle(self, includes_idle):
        return replace(self, includes_idle=bool(includes_idle))

    def fingerprint(self):
        payload = json.dumps(
            {
                "levels_mw": self.levels_mw.tolist(),
                "slot_s": self.slot_s,
                "rate": self.rate.to_dict(),
                "idle": self.includes_idle,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]
