"""Options shared by several commands."""

from pathlib import Path

import click

from ..config import settings

model_option = click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Model definition file (YAML or JSON).",
)
out_option = click.option(
    "--out",
    "out_dir",
    default="results",
    show_default=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Output directory.",
)
seed_option = click.option("--seed", default=settings.SEED, show_default=True, type=int, help="Master seed.")


def parse_horizons(ctx, param, value):
    """Click callback turning "10,20,30" into a list of positive ints."""
    if value is None:
        return None
    try:
        horizons = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of integers") from None
    if not horizons or min(horizons) < 1:
        raise click.BadParameter("horizons must be positive")
    return horizons
