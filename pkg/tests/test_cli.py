import json
from importlib import resources

import pytest

from steklov_lab import cli, verification


def corpus(name):
    return str(resources.files("steklov_lab") / "corpus" / f"{name}.json")


def test_steklov_pants(tmp_path, capsys):
    out = tmp_path / "o"
    assert cli.main(["steklov", "--surface", corpus("pants_222"), "--resolution", "0.2", "--out", str(out)]) == 0
    rec = json.loads((out / "spectrum.json").read_text())
    assert rec["bound_violation"] is False
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["exit_code"] == 0
    assert sorted(manifest["files"]) == ["eigenvalues.csv", "spectrum.json"]
    header, first = (out / "eigenvalues.csv").read_text().splitlines()[:2]
    assert header == "index,sigma,config_hash"
    assert first.endswith("," + manifest["config_hash"])


def test_disk_within_discretization_allowance(tmp_path):
    out = tmp_path / "o"
    assert cli.main(["steklov", "--surface", corpus("disk_R1"), "--out", str(out)]) == 0
    rec = json.loads((out / "spectrum.json").read_text())
    assert rec["discretization_allowance"] > 0


def test_missing_file_writes_nothing(tmp_path, capsys):
    out = tmp_path / "o"
    assert cli.main(["steklov", "--surface", str(tmp_path / "none.json"), "--out", str(out)]) == 1
    assert not out.exists()
    assert "no such file" in capsys.readouterr().err


def test_bad_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"pants": 1,\n "boundaries": [[0, 0, 2],\n [0, 1, 2] [0, 2, 2]]}')
    out = tmp_path / "o"
    assert cli.main(["steklov", "--surface", str(bad), "--out", str(out)]) == 1
    assert "line 3 column" in capsys.readouterr().err
    assert not out.exists()


def test_constants_needs_boundary(tmp_path):
    closed = tmp_path / "closed.json"
    closed.write_text(json.dumps({"pants": 2, "gluings": [[[0, 0], [1, 0], 2, 0], [[0, 1], [1, 1], 2, 0],
                                                          [[0, 2], [1, 2], 2, 0]], "boundaries": []}))
    out = tmp_path / "o"
    assert cli.main(["constants", "--surface", str(closed), "--resolution", "0.2", "--out", str(out)]) == 1
    assert not out.exists()


def test_constants_pants(tmp_path):
    out = tmp_path / "o"
    assert cli.main(["constants", "--surface", corpus("pants_222"), "--resolution", "0.2", "--out", str(out)]) == 0
    rec = json.loads((out / "constants.json").read_text())
    assert rec["h_J_upper"] > 0 and rec["h_C_upper"] > 0
    assert (out / "candidates.csv").read_text().startswith("kind,description,length,area,cheeger,jammes,config_hash")


@pytest.mark.parametrize("argv", [
    ["volumes", "--budget", "16"],
    ["volumes", "--precision", "20"],
    ["volumes", "--eps", "0.25"],
    ["volumes", "--c1", "0.2", "--c2", "0.1"],
    ["volumes", "--grid", "1e6,1e3"],
    ["volumes", "--grid", "a:b"],
    ["nonsense"],
])
def test_invalid_arguments(tmp_path, argv):
    out = tmp_path / "o"
    assert cli.main(argv + ["--out", str(out)] if argv != ["nonsense"] else argv) == 1
    assert not out.exists()


def test_volumes_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["volumes", "--budget", "9", "--out", str(a)]) == 0
    assert cli.main(["volumes", "--budget", "9", "--out", str(b)]) == 0
    for name in ("volumes.txt", "volumes.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert "volume polynomials" in capsys.readouterr().out


def test_config_hash_ignores_output_dir():
    a = cli.RunConfig("volumes", out="x")
    b = cli.RunConfig("volumes", out="y")
    assert a.digest() == b.digest()
    assert cli.RunConfig("volumes", budget=9).digest() != a.digest()


def test_parse_grid():
    assert cli.parse_grid("3:5") == [1e3, 1e4, 1e5]
    assert cli.parse_grid("10,100") == [10.0, 100.0]


def test_verify_all_exit_code_on_failure(tmp_path, monkeypatch):
    def fake(**kwargs):
        return [verification.CheckResult(1, "ok", True, {"x": 1}, [{"x": 1}], []),
                verification.CheckResult(2, "bad", False, {"x": 2}, [{"x": 2}], [])]

    monkeypatch.setattr(verification, "run_all", fake)
    out = tmp_path / "o"
    assert cli.main(["verify-all", "--out", str(out)]) == 2
    summary = json.loads((out / "summary.json").read_text())
    assert [s["passed"] for s in summary] == [True, False]
    assert json.loads((out / "manifest.json").read_text())["exit_code"] == 2
