import io
import json
import zipfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import NoInputError, TableFormatError

TABLE_SCHEMA = "ehsched-table/1"
_FIXED_DATE = (1980, 1, 1, 0, 0, 0)


@dataclass(frozen=True, eq=False)
class ValueTable:
    """Optimal values and decisions of the finite-horizon problem.

    Layers are indexed by slots-to-go: layer n lives at position n - 1.

    Attributes:
        problem (Problem): The instance the table was solved for.
        values (np.ndarray): V_n*(e, h, gamma), shape (N, grid, harvest states, gains).
        decisions (np.ndarray): Argmax action indices into problem.power_set.actions, same shape.
        clamp_transitions (int): Number of (energy, harvest, action) transitions clipped at the grid ceiling.
    """

    problem: object
    values: np.ndarray
    decisions: np.ndarray
    clamp_transitions: int = 0

    def __post_init__(self):
        self.values.setflags(write=False)
        self.decisions.setflags(write=False)

    @property
    def horizon(self):
        return self.values.shape[0]

    def layer(self, n):
        """Values and decisions of the layer with n slots to go."""
        if not 1 <= n <= self.horizon:
            raise IndexError(f"layer {n} outside 1..{self.horizon}")
        return self.values[n - 1], self.decisions[n - 1]

    def decision_drains(self):
        """Per-slot drain of every stored decision."""
        return self.problem.power_set.actions[self.decisions]

    def value_at(self, n, energy, harvest_state=0, channel_state=0):
        k = self.problem.grid.index(energy)
        return float(self.values[n - 1, k, harvest_state, channel_state])

    def header(self):
        problem = self.problem
        return {
            "schema": TABLE_SCHEMA,
            "horizon": self.horizon,
            "grid": {"quantum_mJ": problem.grid.quantum, "max_mJ": problem.grid.max_energy},
            "harvest_states_mJ": problem.harvest.states.tolist(),
            "gains": problem.channel.gains.tolist(),
            "actions_mJ": problem.power_set.actions.tolist(),
            "power_set_hash": problem.power_set.fingerprint(),
            "clamp_transitions": int(self.clamp_transitions),
        }

    def save(self, path):
        """Writes the table as a zip of .npy arrays plus a JSON header.

        Entries carry a fixed timestamp, so equal tables give identical bytes.
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        entries = {
            "header.json": json.dumps(self.header(), indent=2, sort_keys=True).encode(),
            "values.npy": _npy_bytes(self.values),
            "decisions.npy": _npy_bytes(self.decisions),
        }
        with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_DEFLATED) as archive:
            for name, payload in entries.items():
                info = zipfile.ZipInfo(name, date_time=_FIXED_DATE)
                info.compress_type = zipfile.ZIP_DEFLATED
                archive.writestr(info, payload)
        return path

    @classmethod
    def load(cls, path, problem):
        """Reads a table written by `save` and checks it belongs to `problem`.

        Raises:
            NoInputError: If the file does not exist.
            TableFormatError: On a bad archive, foreign schema, or a problem mismatch.
        """
        path = Path(path)
        if not path.is_file():
            raise NoInputError(f"table file not found: {path}")
        try:
            with zipfile.ZipFile(path) as archive:
                header = json.loads(archive.read("header.json"))
                values = np.load(io.BytesIO(archive.read("values.npy")), allow_pickle=False)
                decisions = np.load(io.BytesIO(archive.read("decisions.npy")), allow_pickle=False)
        except (zipfile.BadZipFile, KeyError, ValueError) as exc:
            raise TableFormatError(f"{path}: not a value-table dump ({exc})") from exc

        if header.get("schema") != TABLE_SCHEMA:
            raise TableFormatError(f"{path}: schema {header.get('schema')!r}, expected {TABLE_SCHEMA!r}")
        table = cls(problem, values, decisions, header.get("clamp_transitions", 0))
        expected = table.header()
        for key in ("grid", "harvest_states_mJ", "gains", "actions_mJ", "power_set_hash"):
            if header.get(key) != expected[key]:
                raise TableFormatError(f"{path}: {key} does not match the model")
        return table


def _npy_bytes(array):
    buffer = io.BytesIO()
    np.save(buffer, np.ascontiguousarray(array), allow_pickle=False)
    return buffer.getvalue()
