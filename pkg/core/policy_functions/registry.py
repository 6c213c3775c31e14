import logging

from ..dp_functions.backward_induction import backward_induct
from ..dp_functions.table_lookup import table_policy
from ..errors import DomainError
from ..policy_classes.simple_policies import GreedyPolicy, SinglePowerPolicy, ThroughputOptimalPolicy
from ..policy_classes.threshold_policies import ExpectedThresholdPolicy, ExpectedWaterLevelPolicy

logger = logging.getLogger(__name__)

POLICY_NAMES = (
    "optimal-dp",
    "expected-threshold",
    "expected-water-level",
    "greedy",
    "single-power",
    "to",
)

_FACTORIES = {
    "expected-threshold": ExpectedThresholdPolicy,
    "expected-water-level": ExpectedWaterLevelPolicy,
    "greedy": GreedyPolicy,
    "single-power": SinglePowerPolicy,
    "to": ThroughputOptimalPolicy,
}


def parse_policy_names(text):
    """Splits a comma-separated list of policy names, `all` selecting every policy.

    Raises:
        DomainError: On an unknown name; the message lists the valid ones.
    """
    names = [name.strip() for name in text.split(",") if name.strip()]
    if names == ["all"]:
        return list(POLICY_NAMES)
    unknown = [name for name in names if name not in POLICY_NAMES]
    if unknown or not names:
        raise DomainError(f"unknown policy {', '.join(unknown) or '(none)'}; valid names: {', '.join(POLICY_NAMES)}")
    return list(dict.fromkeys(names))


def build_policy(name, problem, table=None, horizon=None):
    """Builds a named policy for a problem.

    Args:
        name (str): One of POLICY_NAMES.
        problem (Problem): The instance.
        table (ValueTable, optional): Solved table for optimal-dp.
        horizon (int, optional): Horizon to solve for when optimal-dp has no table.

    Returns:
        Policy: The policy object.
    """
    if name == "optimal-dp":
        if table is None:
            if horizon is None:
                raise DomainError("optimal-dp needs a value table or a horizon to solve for")
            logger.info("solving the dynamic program for %d slots", horizon)
            table = backward_induct(problem, horizon)
        elif horizon is not None and table.horizon < horizon:
            raise DomainError(f"value table covers {table.horizon} slots, simulation needs {horizon}")
        return table_policy(table)
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise DomainError(f"unknown policy {name!r}; valid names: {', '.join(POLICY_NAMES)}") from None
    return factory(problem)
