"""CLI surface: subcommands, exit codes, output determinism."""

import json

import pytest

from boxq import modverify
from boxq.cli import main
from boxq.ncpoly import parse_poly


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce_example(capsys):
    code, out, _ = run_cli(capsys, "reduce", "--strategy", "weyl-left:x1", "x0*x1")
    assert code == 0
    assert parse_poly(out.strip()) == parse_poly("q^-2*x1*x0 + q^-1*(q-q^-1)")


def test_reduce_bad_expression(capsys):
    code, _, err = run_cli(capsys, "reduce", "--strategy", "weyl-left:x1", "x9+")
    assert code == 3
    assert err


def test_table_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "table", "lemma9.1", "--index", "0")
    assert code == 0
    assert "expression: n^3 z" in out
    code, out, _ = run_cli(capsys, "table", "lemma9.1", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert data[0]["table"][-1] == {"term": "x1^3*x0^3*x2", "coeff": "-q^-6"}


def test_table_unknown_preset(capsys):
    code, _, err = run_cli(capsys, "table", "lemma5.5")
    assert code == 3


def test_ideal_member_cli(capsys):
    code, out, _ = run_cli(
        capsys,
        "ideal-member",
        "--bound",
        "3",
        "--alphabet",
        "x0,x1",
        "--relations",
        "weyl0",
        "--output",
        "json",
        "q^2*x0^2*x1 - q^-2*x1*x0^2 - (q^2 - q^-2)*x0",
    )
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "member"
    assert data["certificate_recomputed"] is True


def test_ideal_member_inconclusive_exit_2(capsys):
    code, out, _ = run_cli(
        capsys,
        "ideal-member",
        "--bound",
        "4",
        "--alphabet",
        "x0,x1",
        "--relations",
        "weyl0",
        "x0*x1 - x1*x0",
    )
    assert code == 2


def test_ideal_member_specialized(capsys):
    code, out, _ = run_cli(
        capsys,
        "ideal-member",
        "--bound",
        "3",
        "--spec",
        "2",
        "--relations",
        "weyl0",
        "q^2*x0^2*x1 - q^-2*x1*x0^2 - (q^2 - q^-2)*x0",
    )
    assert code == 0


def test_module_check_cli(tmp_path, capsys):
    path = tmp_path / "mod.json"
    payload = modverify.dump_module(modverify.onedim_module(3, q0=2))
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, out, _ = run_cli(capsys, "module-check", str(path))
    assert code == 0
    assert "passed: True" in out

    bad = modverify.dump_module(modverify.onedim_module(3, q0=2))
    bad["matrices"]["x0"] = [["4"]]
    path.write_text(json.dumps(bad), encoding="utf-8")
    code, out, _ = run_cli(capsys, "module-check", str(path), "--output", "json")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_module_check_unreadable(capsys):
    code, _, err = run_cli(capsys, "module-check", "/nonexistent.json")
    assert code == 3


def test_suite_small_run_and_determinism(capsys, tmp_path, monkeypatch):
    args = [
        "suite",
        "--n-exp",
        "2",
        "--m-rac",
        "2",
        "--n-power",
        "2",
        "--r-min",
        "0",
        "--r-max",
        "1",
        "--dihedral-len",
        "3",
        "--spec",
        "2",
        "--no-timing",
        "--output",
        "json",
    ]
    code1, out1, _ = run_cli(capsys, *args)
    assert code1 == 0
    code2, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    data = json.loads(out1)
    assert data["summary"]["verified"] == len(data["instances"])
    assert all("seconds" not in inst for inst in data["instances"])


def test_suite_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "boxq.cfg"
    cfg.write_text(
        "n_exp = 2\nm_rac = 2\nn_power = 2\nr_min = 0\nr_max = 0\n"
        "degree_slack = 2\ndihedral_len = 3\nspecializations = 2\n",
        encoding="utf-8",
    )
    monkeypatch.setenv("BOXQ_CONFIG", str(cfg))
    code, out, _ = run_cli(capsys, "suite", "--no-timing")
    assert code == 0
    assert "summary:" in out


def test_suite_bad_config(capsys):
    code, _, err = run_cli(capsys, "suite", "--n-exp", "1")
    assert code == 3


def test_no_command_prints_help(capsys):
    code, _, err = run_cli(capsys)
    assert code == 3
