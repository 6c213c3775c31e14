import os
from configparser import ConfigParser
from pathlib import Path

from dotenv import find_dotenv, load_dotenv

# load from the first .env file found
load_dotenv(dotenv_path=find_dotenv(usecwd=True))

CONFIG_PATH = Path(__file__).resolve().parent / "config.ini"

_defaults = ConfigParser()
_defaults.read(CONFIG_PATH)


def _env_or_ini(env_name, section, key, cast=str):
    """Returns the environment override for a setting, or its config.ini default."""
    raw = os.getenv(env_name)
    if raw is None or raw == "":
        raw = _defaults.get(section, key)
    return cast(raw)


class Settings:
    """Class representing the defaults used for solving, simulating and ingesting.

    Attributes:
        GRID_QUANTUM_MJ (float): Energy grid step in millijoules.
        GRID_MAX_MJ (float): Energy grid ceiling in millijoules.
        BANDWIDTH_HZ (float): Channel bandwidth of the Shannon rate.
        NOISE_PSD_W_PER_HZ (float): Noise spectral density of the Shannon rate.
        HORIZON (int): Default number of slots.
        REPS (int): Default Monte Carlo replication count.
        SEED (int): Default master seed.
        INITIAL_ENERGY_MJ (float): Default stored energy at the first slot.
        WORKERS (int): Default number of worker processes for sweeps.
        PANEL_AREA_CM2 (float): Solar panel area for trace conversion.
        EFFICIENCY (float): Panel conversion efficiency.
        TRACE_SLOT_S (float): Slot length used when resampling traces.
        TRACE_BINS (int): Number of harvest states estimated from a trace.
        FADING_LEVELS (int): Number of discrete channel gains.
        GAIN_MIN (float): Smallest channel gain.
        GAIN_MAX (float): Largest channel gain.
        FADING_MIXING (float): Mixing weight of the fading chain.
        NAKAGAMI_SHAPE (float): Nakagami-m shape parameter.
        LOG_LEVEL (str): Logging level name.
    """

    # - Energy grid
    GRID_QUANTUM_MJ = _env_or_ini("EHSCHED_GRID_QUANTUM_MJ", "GRID", "quantum_mj", float)
    GRID_MAX_MJ = _env_or_ini("EHSCHED_GRID_MAX_MJ", "GRID", "max_mj", float)

    # - Rate function
    BANDWIDTH_HZ = _env_or_ini("EHSCHED_BANDWIDTH_HZ", "RATE", "bandwidth_hz", float)
    NOISE_PSD_W_PER_HZ = _env_or_ini("EHSCHED_NOISE_PSD", "RATE", "noise_psd_w_per_hz", float)

    # - Simulation
    HORIZON = _env_or_ini("EHSCHED_HORIZON", "SIMULATION", "horizon", int)
    REPS = _env_or_ini("EHSCHED_REPS", "SIMULATION", "reps", int)
    SEED = _env_or_ini("EHSCHED_SEED", "SIMULATION", "seed", int)
    INITIAL_ENERGY_MJ = _env_or_ini("EHSCHED_INITIAL_ENERGY_MJ", "SIMULATION", "initial_energy_mj", float)
    WORKERS = _env_or_ini("EHSCHED_WORKERS", "SIMULATION", "workers", int)

    # - Trace ingest
    PANEL_AREA_CM2 = _env_or_ini("EHSCHED_PANEL_AREA_CM2", "INGEST", "panel_area_cm2", float)
    EFFICIENCY = _env_or_ini("EHSCHED_EFFICIENCY", "INGEST", "efficiency", float)
    TRACE_SLOT_S = _env_or_ini("EHSCHED_TRACE_SLOT_S", "INGEST", "slot_s", float)
    TRACE_BINS = _env_or_ini("EHSCHED_TRACE_BINS", "INGEST", "bins", int)

    # - Fading channel
    FADING_LEVELS = _env_or_ini("EHSCHED_FADING_LEVELS", "FADING", "levels", int)
    GAIN_MIN = _env_or_ini("EHSCHED_GAIN_MIN", "FADING", "gain_min", float)
    GAIN_MAX = _env_or_ini("EHSCHED_GAIN_MAX", "FADING", "gain_max", float)
    FADING_MIXING = _env_or_ini("EHSCHED_FADING_MIXING", "FADING", "mixing", float)
    NAKAGAMI_SHAPE = _env_or_ini("EHSCHED_NAKAGAMI_SHAPE", "FADING", "nakagami_shape", float)

    # - Logging
    LOG_LEVEL = _env_or_ini("EHSCHED_LOG_LEVEL", "LOGGING", "level")


settings = Settings()
