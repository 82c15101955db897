import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from translie.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args, env=None):
        return runner.invoke(main, ["--jobs", "1", *args], env=env)

    return _run


def test_partitions_list_json(run):
    res = run("--json", "partitions-list", "4")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["schema"] == 1 and data["n"] == 4
    assert [p["shape"] for p in data["partitions"]][:2] == [[4], [3, 1]]
    assert sum(p["dim"] ** 2 for p in data["partitions"]) == 24


def test_partitions_list_csv(run):
    res = run("partitions-list", "3", "--csv")
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0].startswith("shape,conjugate,class,dim")
    assert len(lines) == 4


def test_json_and_csv_conflict(run):
    res = run("--json", "--csv", "partitions-list", "3")
    assert res.exit_code == 2


def test_syt_count(run):
    res = run("syt", "[2,1]", "--count")
    assert res.exit_code == 0 and res.output.strip() == "2"


def test_syt_enumerate_json(run):
    res = run("syt", "[3,1^2]", "--enumerate", "--json")
    data = json.loads(res.output)
    assert data["count"] == 6 and len(data["tableaux"]) == 6


def test_bad_partition_is_usage_error(run):
    assert run("syt", "[1,2]").exit_code == 2
    assert run("syt", "[20]").exit_code == 2


def test_rep_verify(run):
    res = run("rep", "[2,2]", "--json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["pass"]
    assert data["checks"]["bilinear twisted invariance"]


def test_rep_matrices(run):
    res = run("rep", "[2,1]", "--matrices", "--json")
    data = json.loads(res.output)
    assert data["matrices"][0]["entries"] == [["1", "0"], ["0", "-1"]]
    assert data["matrices"][1]["entries"] == [["-1/2", "3/2"], ["1/2", "1/2"]]


def test_closure_shape(run):
    res = run("closure", "[3,2]", "--json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["dim"] == 24 and data["pass"]


def test_closure_requires_one_target(run):
    assert run("closure").exit_code == 2
    assert run("closure", "[3,2]", "--all", "5").exit_code == 2


def test_verify_verb_json_roundtrip(run):
    res = run("theorem-a", "5", "--json", "--quiet")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["total"] == data["predicted_total"] == 39
    assert json.loads(json.dumps(data)) == data
    assert all(c["ok"] for c in data["containment_checks"])


def test_verify_verb_modular_per_shape(run):
    res = run("theorem-a", "5", "--mode", "Fp", "--per-shape", "--json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["mode"] == f"Fp:{2**31 - 1}"
    assert len(data["per_shape"]) == 5


def test_verify_verb_bad_prime_exits_one(run):
    res = run("theorem-a", "7", "--mode", "Fp:7")
    assert res.exit_code == 1
    assert "choose another prime" in res.output


def test_verify_verb_range(run):
    assert run("theorem-a", "2").exit_code == 2
    assert run("theorem-a", "9").exit_code == 2
    assert run("theorem-a", "4", "--mode", "Fp:9").exit_code == 2


def test_hull_table_text(run):
    res = run("hull-table", "5")
    assert res.exit_code == 0
    assert any(l.startswith("[3,2]") and "GL" in l for l in res.output.splitlines())


def test_hecke_check(run):
    res = run("hecke-check", "4", "--order", "4", "--json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["pass"] and data["K"] == 4


def test_gnq_check(run):
    res = run("gnq-check", "4", "--json", "--order", "4")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["cases"]["sigma_1"]["conditions"]["2"] is False


def test_env_and_flag_precedence(run):
    res = run("--json", "hecke-check", "3", env={"TRANSLIE_ORDER": "3"})
    assert json.loads(res.output)["K"] == 3
    res = run("--json", "hecke-check", "3", "--order", "5", env={"TRANSLIE_ORDER": "3"})
    assert json.loads(res.output)["K"] == 5
    res = run("--json", "--order", "4", "hecke-check", "3", env={"TRANSLIE_ORDER": "3"})
    assert json.loads(res.output)["K"] == 4


def test_env_mode(run):
    res = run("--json", "closure", "[2,2]", env={"TRANSLIE_MODE": "Fp:101"})
    assert json.loads(res.output)["mode"] == "Fp:101"


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "translie.cli", "syt", "[2,2]"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "2"
