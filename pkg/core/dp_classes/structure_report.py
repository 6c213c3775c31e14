from dataclasses import asdict, dataclass, field


@dataclass
class StructureReport:
    """Outcome of the structural checks on a solved table.

    Violations are tuples of plain numbers so the report serializes to JSON.
    theorem1_ok is None when the check does not apply (fading channel).
    """

    theorem1_ok: bool = None
    theorem1_violations: list = field(default_factory=list)
    threshold_ok: bool = True
    threshold_violations: list = field(default_factory=list)
    assumption1_ok: bool = True
    assumption1_violations: list = field(default_factory=list)
    assumption1_violation_count: int = 0
    lemma_bounds_ok: bool = True
    lemma_violations: list = field(default_factory=list)
    value_monotone_energy_ok: bool = True
    value_monotone_horizon_ok: bool = True
    cells: int = 0
    clamp_transitions: int = 0

    @property
    def ok(self):
        return (
            self.theorem1_ok is not False
            and self.threshold_ok
            and self.assumption1_ok
            and self.lemma_bounds_ok
            and self.value_monotone_energy_ok
            and self.value_monotone_horizon_ok
        )

    @property
    def assumption1_fraction(self):
        return self.assumption1_violation_count / self.cells if self.cells else 0.0

    def to_dict(self):
        report = asdict(self)
        report["ok"] = self.ok
        report["assumption1_fraction"] = self.assumption1_fraction
        return report
