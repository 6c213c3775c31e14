from ..policy_classes.table_policy import TablePolicy


def table_policy(table):
    """Optimal online policy backed by a solved value table.

    At slot n the policy returns the stored decision of layer n at the grid
    point nearest to the stored energy; energies above the ceiling are looked
    up at the ceiling and counted in `policy.lookup_clamps`.
    """
    return TablePolicy(table)
