import json
import subprocess
import sys

import pytest

from hexsaw.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_count_csv(capsys):
    code, out = run(["count", "--n-max", "6", "--format", "csv"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "n,count" and lines[-1] == "6,90"
    _, out = run(["count", "--n-max", "1", "--format", "csv"], capsys)
    assert out.strip().splitlines()[-1] == "1,3"


def test_count_json(capsys):
    code, out = run(["count", "--n-max", "8", "--no-timestamp"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["result"]["mu_target"] == pytest.approx(1.8477590650225735)
    assert doc["result"]["counts"][-1] == 336
    assert doc["config"]["command"] == "count"


def test_verify_exact(capsys):
    code, out = run(["verify", "--T", "1", "--L", "1", "--no-timestamp"], capsys)
    doc = json.loads(out)["result"]
    assert code == EXIT_OK
    assert doc["all_zero"] and doc["identity_ok"]
    assert all(v["exact"] == ["0/1"] * 16 for v in doc["residuals"]["per_vertex"])


def test_verify_off_critical(capsys):
    code, _ = run(["verify", "--T", "1", "--L", "1", "--mode", "float", "--x-frac", "9/10"], capsys)
    assert code == EXIT_VIOLATION


@pytest.mark.parametrize("argv", [
    ["verify", "--T", "x"],
    ["verify", "--T", "0"],
    ["count", "--n-max", "-2"],
    ["scan", "--x-frac", "one"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_cap(capsys, monkeypatch):
    assert main(["verify", "--T", "2", "--L", "2", "--cap", "100"]) == EXIT_CAP
    monkeypatch.setenv("HEXSAW_CAP", "100")
    assert main(["observable", "--T", "2", "--L", "2"]) == EXIT_CAP
    monkeypatch.setenv("HEXSAW_CAP", "lots")
    assert main(["observable"]) == EXIT_USAGE


def test_observable_output_shape(capsys):
    code, out = run(["observable", "--T", "1", "--L", "2", "--no-timestamp"], capsys)
    doc = json.loads(out)["result"]
    assert code == EXIT_OK
    assert doc["domain"] == {"T": 1, "L": 2}
    assert doc["x"] == "exact" and doc["sigma"] == "5/8"
    assert set(doc["boundary_sums"]) == {"alpha", "beta", "eps", "epsbar"}
    assert doc["residuals"]["max_abs"] < 1e-12


def test_scan(capsys):
    code, out = run(["scan", "--T", "1", "--L", "3", "--format", "csv"], capsys)
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert code == EXIT_OK
    assert rows[0] == ["T", "L", "A", "B", "E", "residual"]
    assert all(float(r[3]) <= 1 for r in rows[1:])


def test_bridges(capsys):
    code, out = run(["bridges", "--n-max", "9", "--no-timestamp"], capsys)
    doc = json.loads(out)["result"]
    assert code == EXIT_OK
    assert doc["walks"] == doc["round_trip_ok"] > 0


def test_output_is_reproducible(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p, workers in zip(paths, ("1", "2")):
        assert main(["verify", "--T", "2", "--L", "1", "--no-timestamp", "--out", str(p), "--workers", workers]) == 0
    a, b = (json.loads(p.read_text()) for p in paths)
    for doc in (a, b):
        del doc["config"]["workers"], doc["config"]["out"]
    assert a == b
    main(["verify", "--T", "2", "--L", "1", "--no-timestamp", "--out", str(paths[1])])
    assert paths[1].read_bytes() == paths[0].read_bytes().replace(b"a.json", b"b.json")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hexsaw", "count", "--n-max", "3", "--format", "csv"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[-1] == "3,12"
