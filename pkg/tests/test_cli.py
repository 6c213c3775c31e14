import json

import pytest

from core.cli import solve_command
from core.dp_classes.structure_report import StructureReport
from core.errors import EX_DATAERR, EX_MODEL, EX_NOINPUT, EX_OK, EX_STRUCTURE, EX_USAGE
from core.model_functions.model_file import load_model_file
from main import run

OFF_GRID_MODEL = """\
harvest:
  states_mJ: [0, 256]
  transitions: [[0.9, 0.1], [0.5, 0.5]]
power_set:
  levels_mW: [5, 10, 23]
grid:
  quantum_mJ: 2
  max_mJ: 512
"""


def test_solve_writes_table_and_report(burst_model_file, tmp_path):
    out = tmp_path / "solve"
    assert run(["solve-dp", "--model", str(burst_model_file), "--horizon", "10", "--out", str(out)]) == EX_OK
    assert (out / "value_table.zip").is_file()
    document = json.loads((out / "structure_report.json").read_text())
    assert document["schema"] == "ehsched-report/1"
    assert document["horizon"] == 10
    assert document["report"]["theorem1_ok"] is True


@pytest.mark.parametrize("strict, code", [(True, EX_STRUCTURE), (False, EX_OK)])
def test_strict_solve_fails_on_structure_violations(burst_model_file, tmp_path, monkeypatch, strict, code):
    failing = StructureReport(threshold_ok=False, threshold_violations=[(1, 0.0, 1.0, 7.0)], cells=1)
    monkeypatch.setattr(solve_command, "check_structure", lambda table: failing)
    out = tmp_path / "solve"
    argv = ["solve-dp", "--model", str(burst_model_file), "--horizon", "3", "--out", str(out)]
    assert run(argv + (["--strict"] if strict else [])) == code
    document = json.loads((out / "structure_report.json").read_text())
    assert document["report"]["ok"] is False


@pytest.mark.parametrize(
    "argv, code",
    [
        (["solve-dp", "--model", "{model}", "--horizon", "0"], EX_USAGE),
        (["solve-dp", "--model", "{tmp}/none.yaml"], EX_NOINPUT),
        (["solve-dp", "--model", "{offgrid}", "--horizon", "2"], EX_MODEL),
        (["simulate", "--model", "{model}", "--policies", "greedy,bogus"], EX_USAGE),
        (["simulate", "--model", "{model}", "--sweep-horizons", "a,b"], EX_USAGE),
        (["compare", "--model", "{model}", "--policies", "greedy"], EX_USAGE),
        (["-v", "-q", "solve-dp", "--model", "{model}"], EX_USAGE),
        (["no-such-command"], EX_USAGE),
    ],
)
def test_exit_codes(burst_model_file, tmp_path, argv, code):
    offgrid = tmp_path / "offgrid.yaml"
    offgrid.write_text(OFF_GRID_MODEL)
    args = [a.format(model=burst_model_file, tmp=tmp_path, offgrid=offgrid) for a in argv]
    assert run(args + ["--out", str(tmp_path / "out")] if args[0] != "no-such-command" else args) == code


def test_simulation_is_reproducible(burst_model_file, tmp_path):
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        argv = [
            "simulate", "--model", str(burst_model_file), "--horizon", "8", "--reps", "25",
            "--policies", "expected-threshold,greedy,to", "--seed", "3", "--out", str(out),
        ]
        assert run(argv) == EX_OK
        outputs.append(((out / "aggregate.csv").read_bytes(), (out / "summary.json").read_bytes()))
    assert outputs[0] == outputs[1]
    summary = json.loads(outputs[0][1])
    assert summary["cells"][0]["N"] == 8
    assert set(summary["cells"][0]["policies"]) == {"expected-threshold", "greedy", "to"}


def test_compare_reuses_a_solved_table(burst_model_file, tmp_path):
    assert run(["-q", "solve-dp", "--model", str(burst_model_file), "--horizon", "12", "--out", str(tmp_path)]) == 0
    argv = [
        "compare", "--model", str(burst_model_file), "--table", str(tmp_path / "value_table.zip"),
        "--policies", "optimal-dp,greedy", "--sweep-horizons", "4,12", "--reps", "10",
        "--dump-trajectories", "2", "--out", str(tmp_path / "sim"),
    ]
    assert run(argv) == EX_OK
    lines = (tmp_path / "sim" / "aggregate.csv").read_text().splitlines()
    assert len(lines) == 2 + 4
    trajectory = (tmp_path / "sim" / "trajectories_greedy_N4.csv").read_text().splitlines()
    assert len(trajectory) == 2 + 2 * 4


def test_too_short_table_is_rejected(burst_model_file, tmp_path):
    assert run(["solve-dp", "--model", str(burst_model_file), "--horizon", "3", "--out", str(tmp_path)]) == 0
    argv = [
        "simulate", "--model", str(burst_model_file), "--table", str(tmp_path / "value_table.zip"),
        "--policies", "optimal-dp", "--horizon", "5", "--reps", "2", "--out", str(tmp_path / "sim"),
    ]
    assert run(argv) == EX_USAGE


def test_ingest_writes_a_loadable_model(write_trace, tmp_path):
    trace = write_trace([(30 * k, 100.0 * (k % 3)) for k in range(40)])
    out = tmp_path / "model.json"
    assert run(["ingest-trace", "--trace", str(trace), "--bins", "3", "--out", str(out)]) == EX_OK
    document = json.loads(out.read_text())
    assert document["schema"] == "ehsched-model/1"
    assert len(document["harvest"]["states_mJ"]) == 3
    assert document["ingest"]["slots"] == 40
    problem = load_model_file(out)
    assert problem.harvest.size == 3
    assert problem.grid.max_energy % problem.grid.quantum == 0


def test_ingest_constant_trace(write_trace, tmp_path):
    trace = write_trace([(30 * k, 1000.0) for k in range(5)])
    out = tmp_path / "model.json"
    assert run(["ingest-trace", "--trace", str(trace), "--out", str(out)]) == EX_OK
    assert json.loads(out.read_text())["harvest"]["transitions"] == [[1.0]]


def test_ingest_malformed_trace(write_trace, tmp_path):
    trace = write_trace([(0, 1.0), "30,x"])
    assert run(["ingest-trace", "--trace", str(trace), "--out", str(tmp_path / "m.json")]) == EX_DATAERR
