"""Suite generation and instance execution."""

import json
import pathlib

import pytest

from boxq import runner
from boxq.runner import IdentityInstance, SuiteConfig, run_instance, run_suite, suite

DATA = pathlib.Path(__file__).parent / "data"


def test_suite_count_matches_golden():
    cfg = SuiteConfig()  # (n_exp, m_rac, n_power, r range) = (4, 6, 8, [-4, 4])
    insts = suite(cfg)
    golden = json.loads((DATA / "suite_count.json").read_text())
    assert len(insts) == golden["default_count"]
    by_label = {}
    for inst in insts:
        by_label[inst.label] = by_label.get(inst.label, 0) + 1
    assert by_label == golden["by_label"]


def test_suite_names_cite_labels():
    for inst in suite(SuiteConfig()):
        assert inst.name.startswith(inst.label)
        assert inst.label


def test_suite_deterministic():
    a = [i.name for i in suite(SuiteConfig())]
    b = [i.name for i in suite(SuiteConfig())]
    assert a == b


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(n_exp=1).validate()
    with pytest.raises(ValueError):
        SuiteConfig(r_min=3, r_max=-3).validate()
    with pytest.raises(ValueError):
        SuiteConfig(specializations=(1,)).validate()


def test_run_instance_residual_reported(monkeypatch):
    # a corrupted identity must surface as a residual with a witness
    cfg = SuiteConfig()
    from boxq import algebra
    from boxq.ncpoly import NCPoly

    real = runner.diff_poly

    def corrupted(label, i, params, config):
        out = real(label, i, params, config)
        if label == "c1":
            out = out + NCPoly.gen(0)
        return out

    monkeypatch.setattr(runner, "diff_poly", corrupted)
    res = run_instance(IdentityInstance("c1[i=0,2]", "c1", 0, (2,), ("rewrite",)), cfg)
    assert res.verdict == "residual"
    assert "residual" in res.witness
    monkeypatch.setattr(runner, "diff_poly", real)
    res = run_instance(IdentityInstance("c1[i=0,2]", "c1", 0, (2,), ("rewrite",)), cfg)
    assert res.verdict == "verified"


def test_small_suite_all_engines_verify():
    cfg = SuiteConfig(n_exp=2, m_rac=3, n_power=3, r_min=-1, r_max=1, dihedral_len=3)
    report = run_suite(cfg)
    counts = report.counts()
    assert counts["residual"] == 0 and counts["error"] == 0
    assert counts["inconclusive"] == 0
    assert report.exit_code == 0
    js = report.to_json()
    assert js["summary"]["verified"] == len(js["instances"])


def test_parallel_run_matches_serial():
    cfg = SuiteConfig(n_exp=2, m_rac=2, n_power=2, r_min=0, r_max=0, dihedral_len=2, no_timing=True)
    insts = suite(cfg)[:24]
    serial = run_suite(cfg, parallelism=1, instances=insts)
    parallel = run_suite(cfg, parallelism=2, instances=insts)
    s = [(r.instance.name, r.verdict) for r in serial.results]
    p = [(r.instance.name, r.verdict) for r in parallel.results]
    assert s == p


def test_cross_engine_verdicts_agree_per_instance():
    cfg = SuiteConfig(n_exp=2, m_rac=2, n_power=3, r_min=0, r_max=0, dihedral_len=2)
    for inst in suite(cfg):
        if len(inst.engines) < 2:
            continue
        res = run_instance(inst, cfg)
        verdicts = {e.verdict for e in res.engines}
        assert verdicts == {"verified"}, (inst.name, res.engines)
