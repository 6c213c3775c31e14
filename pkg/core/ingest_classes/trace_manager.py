from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from ..config import settings
from ..errors import DomainError, NoInputError, TraceFormatError

TIME_COLUMN = "timestamp_s"
IRRADIANCE_COLUMN = "irradiance_w_m2"


@dataclass(frozen=True)
class TraceSpec:
    """Where an irradiance trace lives and how it converts to harvested energy.

    Args:
        path (str | Path): CSV with header `timestamp_s,irradiance_w_m2`.
        panel_area_cm2 (float): Panel area.
        efficiency (float): Conversion efficiency in (0, 1].
        slot_s (float): Slot length the trace is resampled to.
        bins (int): Number of harvest states.
    """

    path: Path
    panel_area_cm2: float = settings.PANEL_AREA_CM2
    efficiency: float = settings.EFFICIENCY
    slot_s: float = settings.TRACE_SLOT_S
    bins: int = settings.TRACE_BINS

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        if self.panel_area_cm2 <= 0:
            raise DomainError("panel area must be positive")
        if not 0 < self.efficiency <= 1:
            raise DomainError("efficiency must lie in (0, 1]")
        if self.slot_s <= 0:
            raise DomainError("slot length must be positive")
        if self.bins < 1:
            raise DomainError("at least one bin is required")

    @property
    def mj_per_slot_per_w_m2(self):
        """Harvest in mJ over one slot per W/m² of mean irradiance."""
        return self.panel_area_cm2 * 1e-4 * self.efficiency * self.slot_s * 1e3


class IrradianceTraceManager:
    """Reads an irradiance trace from a CSV file.

    Args:
        spec (TraceSpec): Trace location and conversion constants.
    """

    def __init__(self, spec):
        self.spec = spec
        self.data = None

    def check_file(self):
        """Checks the trace exists and can be opened.

        Raises:
            NoInputError: If the file is missing or unreadable.
        """
        path = self.spec.path
        if not path.is_file():
            raise NoInputError(f"trace not found: {path}")
        try:
            with path.open("r", encoding="utf-8"):
                pass
        except PermissionError as exc:
            raise NoInputError(f"trace cannot be read: {path}") from exc

    def check_columns(self, frame):
        """Checks the header names both required columns."""
        missing = [c for c in (TIME_COLUMN, IRRADIANCE_COLUMN) if c not in frame.columns]
        if missing:
            raise TraceFormatError(f"{self.spec.path}: missing column(s) {', '.join(missing)}", [1])

    def read_data(self):
        """Reads and validates the trace.

        Returns:
            pd.DataFrame: Numeric timestamp and irradiance columns, sorted by time.

        Raises:
            TraceFormatError: On a bad header or unparseable rows; lists their file line numbers.
        """
        self.check_file()
        try:
            frame = pd.read_csv(self.spec.path, dtype=str, skip_blank_lines=True, comment="#")
        except (pd.errors.ParserError, UnicodeDecodeError) as exc:
            raise TraceFormatError(f"{self.spec.path}: {exc}") from exc
        self.check_columns(frame)

        times = pd.to_numeric(frame[TIME_COLUMN].str.strip(), errors="coerce")
        irradiance = pd.to_numeric(frame[IRRADIANCE_COLUMN].str.strip(), errors="coerce")
        bad = times.isna() | irradiance.isna() | (irradiance < 0) | ~np.isfinite(irradiance.fillna(0))
        if bad.any():
            # header is line 1
            lines = (frame.index[bad.to_numpy()] + 2).tolist()
            raise TraceFormatError(
                f"{self.spec.path}: {len(lines)} unparseable row(s) at line(s) {', '.join(map(str, lines[:20]))}",
                lines,
            )
        if frame.empty:
            raise TraceFormatError(f"{self.spec.path}: no samples")

        self.data = (
            pd.DataFrame({TIME_COLUMN: times, IRRADIANCE_COLUMN: irradiance})
            .sort_values(TIME_COLUMN, kind="mergesort")
            .reset_index(drop=True)
        )
        return self.data
