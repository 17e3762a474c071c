import csv
import io
import json
import subprocess
import sys

import pytest

from wittkit import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_kgroup(capsys):
    code, out, _ = run(["kgroup", "-p", "2", "-m", "4", "-q", "1"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert rec["group"]["exponents"] == [2, 1]
    assert rec["failures"] == []


def test_kgroup_even_degree(capsys):
    code, out, _ = run(["kgroup", "-p", "3", "-m", "4", "-q", "4"], capsys)
    assert code == 0 and json.loads(out)["group"]["exponents"] == []


def test_kgroup_bad_m(capsys):
    code, _, err = run(["kgroup", "-p", "2", "-m", "0", "-q", "1"], capsys)
    assert code == 2 and "error" in err


def test_bad_prime(capsys):
    code, _, _ = run(["kgroup", "-p", "4", "-m", "3", "-q", "1"], capsys)
    assert code == 2


def test_map(capsys):
    code, out, _ = run(["map", "-p", "2", "-m", "3", "-n", "1", "-q", "5"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert {"j": 1, "a": 4, "b": 0, "w": 2} in rec["map"]["factors"]
    assert rec["zero"] is True
    code, out, _ = run(["map", "-p", "2", "-m", "4", "-n", "2", "-q", "1"], capsys)
    rec = json.loads(out)
    assert rec["ker"]["length"] - rec["coker"]["length"] == 2
    assert rec["zero"] is False


def test_thresholds(capsys):
    code, out, _ = run(["thresholds", "-p", "7", "-m", "3", "-n", "2"], capsys)
    rec = json.loads(out)
    assert code == 0
    assert rec["i0"]["value"] >= 2
    assert rec["i0"]["lower_bound"] == 2
    assert "failing_j" in rec["i0"]
    code, out, _ = run(["thresholds", "-p", "2", "-m", "3", "-n", "2"], capsys)
    assert json.loads(out)["q0"]["beyond_theorem"] is True
    code, out, _ = run(["thresholds", "-p", "3", "-n", "2"], capsys)
    assert code == 0 and json.loads(out)["m0"]["value"] > 3


def test_divisor(capsys):
    code, out, _ = run(["divisor", "-p", "2", "-m", "3", "-n", "1", "-i", "2"], capsys)
    rec = json.loads(out)
    assert rec["alpha"]["orders"]["1"] == 2
    code, out, _ = run(["divisor", "-p", "2", "-m", "3", "-n", "1", "-i", "0"], capsys)
    rec = json.loads(out)
    assert rec["alpha"]["orders"] == {} and rec["kills_module"] is False


def test_bar(capsys):
    for m, i in [(2, 2), (3, 2)]:
        code, out, _ = run(["bar", "-m", str(m), "-i", str(i)], capsys)
        assert code == 0 and json.loads(out)["match"] is True
    code, _, _ = run(["bar", "-m", "1", "-i", "2"], capsys)
    assert code == 2


def test_sweep_csv_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["sweep", "crosscheck", "-p", "2,3", "-m", "1-4", "-n", "1-3", "-i", "0-3", "--format", "csv", "--out", str(out1)]) == 0
    assert cli.main(["sweep", "crosscheck", "-p", "2,3", "-m", "1-4", "-n", "1-3", "-i", "0-3", "--format", "csv", "--out", str(out2), "--jobs", "2"]) == 0
    assert out1.read_text() == out2.read_text()
    rows = list(csv.DictReader(io.StringIO(out1.read_text())))
    assert rows and all(r["ok"] == "True" for r in rows)


def test_sweep_length(capsys):
    code, out, _ = run(["sweep", "length", "-p", "2", "-m", "1-5", "-i", "0-3"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 20 and all(r["ok"] for r in rows)


def test_sweep_empty(capsys):
    code, _, _ = run(["sweep", "map", "-m", "1", "-n", "2"], capsys)
    assert code == 2
    with pytest.raises(cli.UsageError):
        cli.parse_range("5-3")


def test_env_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WITTKIT_OUT", str(tmp_path))
    assert cli.main(["kgroup", "-p", "2", "-m", "2", "-q", "3"]) == 0
    assert json.loads((tmp_path / "kgroup.json").read_text())["group"]["length"] == 2


def test_failures_give_nonzero_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli.cyclicbar, "predicted_homology", lambda m, i: cli.cyclicbar.HomologyResult(()))
    code, out, err = run(["bar", "-m", "2", "-i", "2"], capsys)
    assert code == 1
    assert json.loads(out)["failures"] == ["match"]
    assert "failures" in json.loads(err)


def test_json_safe():
    assert cli.json_safe({"a": 2**60, "b": [3, 2**53]}) == {"a": str(2**60), "b": [3, 2**53]}
    assert cli.json_safe(True) is True


def test_umax(capsys):
    code, _, _ = run(["kgroup", "-p", "2", "-m", "4", "-q", "3", "--umax", "3"], capsys)
    assert code == 2
    code, _, _ = run(["kgroup", "-p", "2", "-m", "4", "-q", "3", "--umax", "4"], capsys)
    assert code == 0


def test_selftest(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0 and json.loads(out)["failures"] == []


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "wittkit.cli", "kgroup", "-p", "2", "-m", "4", "-q", "1", "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0].startswith("p,m,q,group")
