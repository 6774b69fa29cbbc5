import json
import subprocess
import sys

import pytest

from ckp.cli import RunConfig, build_parser, config_from_args, main, render, run
from ckp.suites import Check, Report


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hwv_dimensions(capsys):
    code, out = invoke(capsys, "hwv", "--max-degree", "9/2")
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == 1 and data["pass"] is True
    assert [d["dimension"] for d in data["degrees"]] == [1, 1, 1, 2, 1, 2, 3, 3, 3, 4]
    assert data["degrees"][-1]["degree"] == "9/2"


def test_hwv_table(capsys):
    code, out = invoke(capsys, "hwv", "--max-degree", "3", "--format", "table")
    assert code == 0
    assert "PASS" in out and "{" not in out


def test_identities(capsys):
    code, out = invoke(capsys, "identities", "--order", "25")
    data = json.loads(out)
    assert code == 0
    assert all(c["pass"] for c in data["checks"])
    names = {c["name"] for c in data["checks"]}
    assert {"jacobi_triple", "triangular", "hwv_factorization", "ptdo_character"} <= names


def test_char(capsys):
    code, out = invoke(capsys, "char", "--order", "3", "--bivariate")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_hirota_vacuum(capsys):
    code, out = invoke(capsys, "hirota", "--tau", "vacuum")
    data = json.loads(out)
    assert code == 0
    assert data["residue"] == []


def test_hirota_nonsolution_fails(capsys):
    code, out = invoke(capsys, "hirota", "--tau", '[["1", [[-1, 1]]]]')
    data = json.loads(out)
    assert code == 1
    assert data["pass"] is False
    assert sorted(data["residue"]) == sorted([["1", [], [[-1, 2]]], ["-1", [[-1, 2]], []]])


def test_symplectic_small(capsys):
    code, out = invoke(capsys, "symplectic-check", "--max-degree", "2", "--max-mode", "2")
    data = json.loads(out)
    assert code == 0, [c for c in data["checks"] if not c["pass"]]
    assert {"central_charge", "translation_rule"} <= {c["name"] for c in data["checks"]}


def test_bosonize_small(capsys):
    code, out = invoke(
        capsys, "bosonize-check", "--max-weight", "1", "--max-mode", "3/2", "--max-degree", "2", "--hirota-degree", "1"
    )
    data = json.loads(out)
    assert code == 0, [c for c in data["checks"] if not c["pass"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["hwv", "--max-degree", "4.5"],
        ["hwv", "--max-degree", "1/3"],
        ["hwv", "--max-degree", "-1/2"],
        ["symplectic-check", "--max-mode", "3/2"],
        ["bosonize-check", "--max-weight", "2/1"],
        ["frobnicate"],
        ["hirota", "--tau", "nonsense"],
        ["hwv", "--format", "xml"],
    ],
)
def test_rejections_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_parse_diagnostic(capsys):
    with pytest.raises(SystemExit):
        main(["hwv", "--max-degree", "4.5"])
    assert "invalid half-integer literal '4.5'" in capsys.readouterr().err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = invoke(capsys, "hwv", "--max-degree", "2", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["suite"] == "hwv"


@pytest.mark.parametrize(
    "argv",
    [
        ["hwv", "--max-degree", "11/2"],
        ["bosonize-check", "--max-weight", "2", "--max-mode", "3/2", "--max-degree", "2", "--hirota-degree", "1"],
        ["symplectic-check", "--max-degree", "2", "--max-mode", "2"],
    ],
    ids=lambda a: a[0],
)
def test_reports_byte_identical(capsys, argv):
    first = invoke(capsys, *argv)[1]
    again = invoke(capsys, *argv)[1]
    parallel = invoke(capsys, *argv, "--parallel")[1]
    assert first == again == parallel


def test_timings_flag(capsys):
    out = invoke(capsys, "hwv", "--max-degree", "1", "--timings")[1]
    assert all("runtime_ms" in c for c in json.loads(out)["checks"])
    out = invoke(capsys, "hwv", "--max-degree", "1")[1]
    assert not any("runtime_ms" in c for c in json.loads(out)["checks"])


def test_thread_cap(monkeypatch, capsys):
    monkeypatch.setenv("CKP_MAX_THREADS", "1")
    serial = invoke(capsys, "hwv", "--max-degree", "7/2")[1]
    capped = invoke(capsys, "hwv", "--max-degree", "7/2", "--parallel")[1]
    assert serial == capped


def test_failing_report_exit_status(monkeypatch, capsys):
    failing = Report("hwv", [Check("dimension", False, expected=[1], actual=[2])])
    monkeypatch.setattr("ckp.cli.hwv_suite", lambda *a, **k: failing)
    code, out = invoke(capsys, "hwv", "--max-degree", "1")
    data = json.loads(out)
    assert code == 1
    assert data["pass"] is False
    assert data["checks"] == [{"name": "dimension", "pass": False, "expected": [1], "actual": [2]}]


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("nope")
    with pytest.raises(ValueError):
        RunConfig("hwv", format="xml")
    with pytest.raises(ValueError):
        RunConfig("hwv", max_degree=-1)
    cfg = config_from_args(build_parser().parse_args(["hwv", "--max-degree", "13/2"]))
    assert cfg.max_degree == 13 and cfg.command == "hwv"


def test_render_round_trip():
    cfg = RunConfig("hwv", max_degree=3)
    text = render(run(cfg), cfg)
    assert text.endswith("\n")
    assert json.loads(text)["degrees"][-1]["charges"] == [3, -1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ckp", "hwv", "--max-degree", "1/2", "--format", "table"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
