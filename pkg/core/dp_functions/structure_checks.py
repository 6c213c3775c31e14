"""Machine checks of the threshold structure of a solved table."""

import logging

import numpy as np

from ..dp_classes.structure_report import StructureReport
from .backward_induction import BellmanOperator, action_values

logger = logging.getLogger(__name__)

VALUE_TOL = 1e-9
MAX_LISTED = 1000


def _tolerance(values):
    return VALUE_TOL * max(1.0, float(np.max(np.abs(values))))


def _append(violations, item):
    if len(violations) < MAX_LISTED:
        violations.append(item)


def check_structure(table):
    """Verifies the optimal-decision structure of a fully solved table.

    Checks that, within every layer n and state (h, gamma):
        - the decision is rho_min wherever 0 < e < rho_min (static channel only);
        - the decision is nondecreasing in e;
        - e > n * rho_max forces rho_max, and rho cannot beat a lower rho' when
          e <= g(gamma rho') / g(gamma rho) * rho;
        - for every pair rho > rho', once rho is strictly better it stays better as e grows;
        - values are nondecreasing in e and in n.

    Violations are reported, never raised.

    Args:
        table (ValueTable): Solved table.

    Returns:
        StructureReport: Flags plus violating (n, h, gamma, e[, rho, rho']) tuples.
    """
    problem = table.problem
    power_set = problem.power_set
    energies = problem.grid.energies
    harvests = problem.harvest.states
    gains = problem.channel.gains
    actions = power_set.actions
    offset = 1 if power_set.includes_idle else 0
    level_actions = np.arange(offset, actions.size)
    tol = _tolerance(table.values)

    report = StructureReport(cells=int(table.values.size), clamp_transitions=table.clamp_transitions)
    drains = table.decision_drains()

    # partial-slot rho_min below rho_min, static channel only
    if problem.channel.is_static:
        region = (energies > 0) & (energies < power_set.rho_min)
        bad = np.argwhere(~np.isclose(drains[:, region, :, :], power_set.rho_min))
        region_energies = energies[region]
        for n_idx, k, i, u in bad:
            _append(report.theorem1_violations, (n_idx + 1, harvests[i], gains[u], region_energies[k]))
        report.theorem1_ok = not report.theorem1_violations

    # decisions nondecreasing in energy
    drops = np.argwhere(np.diff(drains, axis=1) < 0)
    for n_idx, k, i, u in drops:
        _append(report.threshold_violations, (n_idx + 1, harvests[i], gains[u], energies[k + 1]))
    report.threshold_ok = drops.size == 0

    report.value_monotone_energy_ok = bool(np.all(np.diff(table.values, axis=1) >= -tol))
    report.value_monotone_horizon_ok = bool(np.all(np.diff(table.values, axis=0) >= -tol))

    bellman = BellmanOperator(problem)
    for n in range(1, table.horizon + 1):
        q = action_values(table, n, bellman)

        # enough energy for every remaining slot at rho_max
        rich = energies > n * power_set.rho_max
        for k, i, u in np.argwhere(~np.isclose(drains[n - 1][rich], power_set.rho_max)):
            _append(report.lemma_violations, ("lemma1", n, harvests[i], gains[u], energies[rich][k]))

        for hi_pos, hi in enumerate(level_actions):
            for lo in level_actions[:hi_pos]:
                diff = q[hi] - q[lo]

                # the higher level cannot win below g(gamma rho')/g(gamma rho) * rho
                bound = power_set.bits(actions[lo], gains) / power_set.bits(actions[hi], gains) * actions[hi]
                low_region = energies[:, None, None] <= bound[None, None, :]
                for k, i, u in np.argwhere(low_region & (diff > tol)):
                    _append(
                        report.lemma_violations,
                        ("lemma2", n, harvests[i], gains[u], energies[k], actions[hi], actions[lo]),
                    )

                # single crossing: the sign of the difference switches at most once, - to +
                better = diff > tol
                seen = np.maximum.accumulate(better, axis=0)
                flips = np.argwhere(seen & ~better)
                report.assumption1_violation_count += len(flips)
                for k, i, u in flips:
                    _append(
                        report.assumption1_violations,
                        (n, harvests[i], gains[u], energies[k], actions[hi], actions[lo]),
                    )

    report.assumption1_ok = report.assumption1_violation_count == 0
    report.lemma_bounds_ok = not report.lemma_violations

    report.theorem1_violations = _plain(report.theorem1_violations)
    report.threshold_violations = _plain(report.threshold_violations)
    report.assumption1_violations = _plain(report.assumption1_violations)
    report.lemma_violations = _plain(report.lemma_violations)

    if not report.assumption1_ok:
        logger.warning(
            "%d grid cells break the single-crossing assumption (%.4f%% of cells)",
            report.assumption1_violation_count,
            100 * report.assumption1_fraction,
        )
    if not report.threshold_ok:
        logger.warning("decision tables are not monotone in energy at %d points", len(drops))
    if report.theorem1_ok is False:
        logger.warning("rho_min is not chosen below rho_min at %d points", len(report.theorem1_violations))
    return report


def _plain(rows):
    return [tuple(x if isinstance(x, str) else (int(x) if isinstance(x, (int, np.integer)) else float(x)) for x in row) for row in rows]
