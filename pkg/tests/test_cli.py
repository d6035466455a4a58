import json
import subprocess
import sys

import pytest

from dicube import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cube_enumerate(capsys):
    code, out, _ = run_cli(capsys, "cube", "enumerate", "--dom", "2", "--cod", "2")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["count"] == 14
    assert "2->2: [0, 0]" in report["result"]["morphisms"]


def test_cube_enumerate_class_filter(capsys):
    code, out, _ = run_cli(
        capsys, "cube", "enumerate", "--dom", "2", "--cod", "2", "--class", "iso"
    )
    assert json.loads(out)["result"]["count"] == 2


def test_reports_are_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "inv", "h1", "--space", "torus", "--monoid", "zmod2")
    _, out2, _ = run_cli(capsys, "inv", "h1", "--space", "torus", "--monoid", "zmod2")
    assert out1 == out2


def test_h1_klein_report(capsys):
    code, out, _ = run_cli(capsys, "inv", "h1", "--space", "klein", "--monoid", "zmod4")
    assert code == 0
    assert json.loads(out)["result"]["class_count"] == 8


def test_pi0_report(capsys):
    code, out, _ = run_cli(capsys, "inv", "pi0", "edge_boundary")
    assert json.loads(out)["result"]["count"] == 2


def test_tau_report(capsys):
    code, out, _ = run_cli(capsys, "inv", "tau", "--space", "nerve:zmod2", "--n", "1")
    result = json.loads(out)["result"]
    assert result["class_count"] == 2
    assert result["monoid_table"] == [[0, 1], [1, 0]]


def test_homclasses_report(capsys):
    code, out, _ = run_cli(capsys, "inv", "homclasses", "--b", "circle", "--s", "s3")
    assert json.loads(out)["result"]["class_count"] == 3


def test_cset_roundtrip_through_files(tmp_path, capsys):
    path = tmp_path / "torus.json"
    code, out, _ = run_cli(
        capsys, "cset", "make", "--shape", "torus", "--trunc", "2", "--save", str(path)
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "cset", "validate", str(path))
    assert code == 0
    assert json.loads(out)["result"]["valid"]
    code, out, _ = run_cli(capsys, "cset", "sd", str(path), "--k", "3")
    assert code == 0
    assert json.loads(out)["result"]["census"] == [9, 18, 9]


def test_cset_sd_usage_error(tmp_path, capsys):
    path = tmp_path / "c.json"
    run_cli(capsys, "cset", "make", "--shape", "circle", "--trunc", "2", "--save", str(path))
    code, _, err = run_cli(capsys, "cset", "sd", str(path), "--k", "0")
    assert code == 2
    assert "subscript" in err


def test_t1_report(capsys):
    code, out, _ = run_cli(capsys, "t1", "klein", "--trunc", "2")
    result = json.loads(out)["result"]
    assert result["objects"] == 1
    assert len(result["generators"]) == 2


def test_cat_classes_report(capsys):
    code, out, _ = run_cli(capsys, "cat", "classes", "--monoid", "s3")
    result = json.loads(out)["result"]
    assert result["count"] == 3
    assert result["cancellative"]
    code, out, _ = run_cli(capsys, "cat", "classes", "--monoid", "idem2")
    result = json.loads(out)["result"]
    assert result["count"] == 1
    assert not result["cancellative"]


def test_cat_nerve_report(capsys):
    code, out, _ = run_cli(capsys, "cat", "nerve", "--cat", "zmod2", "--trunc", "2")
    assert json.loads(out)["result"]["cells"] == [1, 2, 8]


def test_lattice_check(tmp_path, capsys):
    from dicube import lattice as lat

    path = tmp_path / "m3.json"
    path.write_text(lat.to_json(lat.m_lattice(3)))
    code, out, _ = run_cli(capsys, "lattice", "check", str(path))
    result = json.loads(out)["result"]
    assert result["distributive"] is False
    assert result["modular"] is True


def test_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "--budget", "5", "inv", "h1", "--space", "torus", "--monoid", "zmod4"
    )
    assert code == 3
    assert "budget" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("DICUBE_BUDGET", "5")
    code, _, err = run_cli(capsys, "inv", "h1", "--space", "torus", "--monoid", "zmod4")
    assert code == 3


def test_out_flag_writes_report(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "--out", str(target), "inv", "pi0", "circle")
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["result"]["count"] == 1


def test_unknown_space_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "inv", "pi0", "dodecahedron")
    assert code == 2


def test_verify_single_criterion(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "6"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "criterion  6 [PASS]" in out


def test_oracle_check_lattice(capsys):
    code, out, _ = run_cli(capsys, "oracle", "check", "--suite", "lattice")
    assert code == 0
    assert json.loads(out)["result"]["ok"] is True


def test_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "dicube.cli", "inv", "pi0", "circle"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["count"] == 1
