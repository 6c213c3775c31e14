"""Exception hierarchy shared by every module.

Each error carries the process exit code the command line maps it to.
"""

EX_OK = 0
EX_MODEL = 1
EX_STRUCTURE = 2
EX_DOMINANCE = 3
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70


class EnergySchedError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = EX_SOFTWARE


class DomainError(EnergySchedError, ValueError):
    """An argument lies outside the domain of a numeric operation."""

    exit_code = EX_USAGE


class ModelError(EnergySchedError, ValueError):
    """A model definition breaks one of its invariants."""

    exit_code = EX_MODEL


class OffGridError(ModelError):
    """A harvest value or per-slot drain is not a multiple of the energy quantum."""


class ChainError(ModelError):
    """A Markov chain has no unique stationary distribution."""


class TraceFormatError(EnergySchedError):
    """An irradiance trace could not be parsed.

    Attributes:
        line_numbers (list[int]): 1-based file line numbers of the bad rows.
    """

    exit_code = EX_DATAERR

    def __init__(self, message, line_numbers=()):
        super().__init__(message)
        self.line_numbers = list(line_numbers)


class TableFormatError(EnergySchedError):
    """A value-table dump is malformed, foreign or from another schema version."""

    exit_code = EX_DATAERR


class NoInputError(EnergySchedError):
    """A referenced input file does not exist."""

    exit_code = EX_NOINPUT


class DominanceError(EnergySchedError):
    """An online policy delivered more bits than the offline oracle on some path."""

    exit_code = EX_DOMINANCE


class StructureViolationError(EnergySchedError):
    """Structural checks failed while running in strict mode."""

    exit_code = EX_STRUCTURE
