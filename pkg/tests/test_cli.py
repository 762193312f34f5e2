import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from pltr.cli import main
from pltr.model import Instance, dumps

GOLDEN = Path(__file__).parent / "golden"


def fixture_path(name):
    return str(resources.files("pltr").joinpath("fixtures", f"{name}.json"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", ["a", "b", "inf"])
def test_solve_golden(capsys, name):
    code, out, _ = run_cli(capsys, "solve", fixture_path(f"fixture_{name}"))
    assert out == (GOLDEN / f"solve_fixture_{name}.json").read_text()
    assert code == (2 if name == "inf" else 0)


def test_solve_fixture_values(capsys):
    code, out, _ = run_cli(capsys, "solve", fixture_path("fixture_a"))
    data = json.loads(out)
    assert code == 0 and data["cost"] == 4
    code, out, _ = run_cli(capsys, "solve", fixture_path("fixture_inf"))
    cert = json.loads(out)["certificate"]
    assert code == 2
    assert (cert["kind"], cert["Q"], cert["value"]) == ("deficiency", [0, 1], 1)


def test_solve_outputs_and_diagnostics(capsys, tmp_path):
    sched, svg = tmp_path / "s.json", tmp_path / "g.svg"
    code, out, _ = run_cli(capsys, "solve", fixture_path("fixture_b"), "--diagnostics",
                           "--schedule-out", str(sched), "--gantt-out", str(svg))
    assert code == 0
    assert json.loads(out)["tightness"] == {"checked": 2, "violations": []}
    assert json.loads(sched.read_text())["cost"]["total"] == 6
    assert svg.read_text().startswith("<?xml")


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "solve", str(bad))
    assert code == 1 and "pltr:" in err
    code, _, _ = run_cli(capsys, "solve", str(tmp_path / "missing.json"))
    assert code == 1


def test_structural_violation_is_error(capsys, tmp_path):
    f = tmp_path / "dup.json"
    f.write_text(dumps({"q": 0, "m": 1, "jobs": [{"id": "a", "release": 0, "deadline": 1, "volume": 1},
                                                 {"id": "a", "release": 0, "deadline": 1, "volume": 1}]}))
    code, _, err = run_cli(capsys, "solve", str(f))
    assert code == 1 and "duplicate id" in err


def test_check(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "check", fixture_path("fixture_b"))
    assert code == 0 and json.loads(out) == {"feasible": True}
    code, out, _ = run_cli(capsys, "check", fixture_path("fixture_inf"))
    assert code == 2 and out == (GOLDEN / "check_fixture_inf.json").read_text()
    bounds = tmp_path / "b.json"
    bounds.write_text(dumps({"m": 2, "segments": [{"start": 0, "end": 0, "lower": 0, "upper": 1},
                                                  {"start": 1, "end": 1, "lower": 0, "upper": 2}]}))
    code, out, _ = run_cli(capsys, "check", fixture_path("fixture_b"), "--bounds", str(bounds))
    data = json.loads(out)
    assert code == 2
    assert data["certificate"] == {"kind": "deficiency", "Q": [0, 1], "value": 1, "deficiency": 1, "excess": -4}


def test_check_rejects_crossing_bounds(capsys, tmp_path):
    bounds = tmp_path / "b.json"
    bounds.write_text(dumps({"m": 2, "segments": [{"start": 0, "end": 1, "lower": 2, "upper": 1}]}))
    code, _, err = run_cli(capsys, "check", fixture_path("fixture_b"), "--bounds", str(bounds))
    assert code == 1 and "lower <= upper" in err
    bounds.write_text(dumps({"m": 2, "segments": [{"start": 0, "end": 1, "lower": 3, "upper": 3}]}))
    code, _, err = run_cli(capsys, "check", fixture_path("fixture_b"), "--bounds", str(bounds))
    assert code == 1 and "upper <= m" in err


def test_compare(capsys):
    code, out, _ = run_cli(capsys, "compare", fixture_path("fixture_a"), "--json")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 1 and rows[0]["bound_ok"]
    code, out, _ = run_cli(capsys, "compare", "--gen", "n=3,d=8,m=2,q=2,seed=7", "--trials", "100", "--json")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 100 and all(r["bound_ok"] for r in rows)
    code, out, _ = run_cli(capsys, "compare", "--gen", "n=3,d=8,m=2,q=2,seed=7", "--trials", "0")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_compare_skips_oversized(capsys, tmp_path):
    f = tmp_path / "big.json"
    f.write_text(dumps({"q": 1, "m": 4, "jobs": [{"id": f"j{i}", "release": 0, "deadline": 40, "volume": 3}
                                                 for i in range(4)]}))
    code, out, err = run_cli(capsys, "compare", str(f), "--json")
    assert code == 0 and json.loads(out)["rows"] == [] and "skipped" in err


def test_oracle(capsys):
    code, out, _ = run_cli(capsys, "oracle", fixture_path("fixture_b"))
    assert code == 0 and json.loads(out)["opt_cost"] == 6
    code, _, _ = run_cli(capsys, "oracle", fixture_path("fixture_inf"))
    assert code == 2


def test_gantt(capsys, tmp_path):
    sched = tmp_path / "s.json"
    run_cli(capsys, "solve", fixture_path("fixture_a"), "--schedule-out", str(sched))
    out = tmp_path / "a.svg"
    assert run_cli(capsys, "gantt", str(sched), str(out))[0] == 0
    svg = out.read_text()
    assert svg.count('class="busy"') == 2 and ">P1<" in svg and ">P2<" not in svg
    empty = tmp_path / "e.json"
    empty.write_text(dumps({"processors": []}))
    assert run_cli(capsys, "gantt", str(empty), str(tmp_path / "e.svg"))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(dumps({"processors": [{"k": 1, "slots": [{"t": 0, "job": "a"}]},
                                         {"k": 1, "slots": [{"t": 0, "job": "b"}]}]}))
    assert run_cli(capsys, "gantt", str(bad), str(tmp_path / "b.svg"))[0] == 1
    bad.write_text(dumps({"procs": []}))
    assert run_cli(capsys, "gantt", str(bad), str(tmp_path / "b.svg"))[0] == 1


def test_gen_round_trip(capsys):
    code, out, _ = run_cli(capsys, "gen", "n=3,d=9,m=2,seed=4", "--trials", "5", "--feasible-only")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 5
    for line in lines:
        assert dumps(Instance.from_dict(json.loads(line)).to_dict()) == line


def test_gen_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("PLTR_SEED", "99")
    a = run_cli(capsys, "gen", "n=3,seed=1")[1]
    b = run_cli(capsys, "gen", "n=3,seed=2")[1]
    assert a == b


def test_bench(capsys):
    code, out, _ = run_cli(capsys, "bench", "--gen", "n=20,d=10000,m=4,seed=1", "--trials", "10")
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0 and len(data["trials"]) == 10
    code, out, _ = run_cli(capsys, "bench", "--gen", "n=1,d=50,m=3", "--trials", "3")
    assert all(t["busy_interval_count"] <= 1 for t in json.loads(out)["trials"])
    code, out, _ = run_cli(capsys, "bench", "--gen", "n=4,d=1,m=2,volume=1-1,slack=0-1", "--trials", "5")
    for t in json.loads(out)["trials"]:
        assert t["feasibility_calls"] <= 2 * (4 + t["m_eff"]) * 3


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "pltr.cli", "solve", fixture_path("fixture_inf")],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["status"] == "infeasible"
