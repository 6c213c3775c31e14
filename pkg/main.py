"""Command-line entry point for finite-horizon scheduling of energy-harvesting links.

Commands:
    - solve-dp       solve the dynamic program, dump the table, check its structure
    - simulate       Monte Carlo comparison of online policies with the offline oracle
    - compare        simulate with at least two policies
    - ingest-trace   estimate a harvest chain from an irradiance trace

Exit codes follow sysexits: 64 usage, 65 bad data, 66 missing input, 70
internal error; 1 invalid model, 2 structural violations under --strict,
3 an online policy beating the offline oracle.
"""

import logging
import sys

import click

from core.cli.ingest_command import cmd_ingest
from core.cli.simulate_command import cmd_compare, cmd_simulate
from core.cli.solve_command import cmd_solve
from core.errors import EX_OK, EX_SOFTWARE, EX_USAGE, EnergySchedError
from core.logger import configure_logging

logger = logging.getLogger("core.main")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
@click.option("-q", "--quiet", is_flag=True, help="Warnings and errors only.")
def cli(verbose, quiet):
    """Scheduling toolkit for energy-harvesting transmitters."""
    if verbose and quiet:
        raise click.UsageError("-v and -q are mutually exclusive")
    configure_logging("DEBUG" if verbose else "WARNING" if quiet else None)


cli.add_command(cmd_solve)
cli.add_command(cmd_simulate)
cli.add_command(cmd_compare)
cli.add_command(cmd_ingest)


def run(argv=None):
    """Runs the command line and returns its exit code instead of exiting."""
    try:
        result = cli.main(args=argv, prog_name="ehsched", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EX_USAGE
    except click.Abort:
        return EX_USAGE
    except EnergySchedError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except Exception:
        logger.exception("unexpected error")
        return EX_SOFTWARE
    return result if isinstance(result, int) else EX_OK


if __name__ == "__main__":
    sys.exit(run())
