import logging

import click

from ..config import settings
from ..dp_functions.backward_induction import backward_induct
from ..dp_functions.structure_checks import check_structure
from ..errors import EX_OK, StructureViolationError
from ..model_functions.model_file import load_model_file
from ..sim_functions.output import write_json
from .options import model_option, out_option

logger = logging.getLogger(__name__)

TABLE_FILE = "value_table.zip"
REPORT_FILE = "structure_report.json"


@click.command("solve-dp")
@model_option
@click.option("--horizon", default=settings.HORIZON, show_default=True, type=click.IntRange(min=1), help="Slots N.")
@out_option
@click.option("--strict", is_flag=True, help="Exit 2 when any structural check fails.")
def cmd_solve(model_path, horizon, out_dir, strict):
    """Solves the dynamic program and checks the threshold structure of its decisions."""
    problem = load_model_file(model_path)
    table = backward_induct(problem, horizon)
    report = check_structure(table)

    table_path = table.save(out_dir / TABLE_FILE)
    document = {"horizon": horizon, "model": str(model_path), "report": report.to_dict()}
    report_path = write_json(document, out_dir / REPORT_FILE)
    logger.info("wrote %s and %s", table_path, report_path)

    if not report.ok:
        failed = _failed_checks(report)
        if strict:
            raise StructureViolationError(f"structural checks failed: {failed} (see {report_path})")
        logger.warning("structural checks failed: %s", failed)
    return EX_OK


def _failed_checks(report):
    flags = {
        "theorem1": report.theorem1_ok,
        "threshold": report.threshold_ok,
        "assumption1": report.assumption1_ok,
        "lemma_bounds": report.lemma_bounds_ok,
        "value_monotone_energy": report.value_monotone_energy_ok,
        "value_monotone_horizon": report.value_monotone_horizon_ok,
    }
    return ", ".join(name for name, flag in flags.items() if flag is False)
