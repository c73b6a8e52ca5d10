import json

import pytest

from opineq.suites import SUITES, ConfigError, TrialConfig, run_suite, run_trial, strip_timing


def test_config_validation():
    for bad in (dict(trials=0), dict(dims=(0, 3)), dict(dims=(5, 2)), dict(dims=(1, 65)),
                dict(suite="nope"), dict(seed=-1)):
        kw = dict(suite="gpl") | bad
        with pytest.raises(ConfigError):
            TrialConfig(**kw).validate()


def test_gpl_suite_seed_seven():
    rep = run_suite(TrialConfig(suite="gpl", trials=100, seed=7))
    s = rep["suites"]["gpl"]
    assert s["counts"] == {"passed": 100, "failed": 0, "skipped": 0}
    assert rep["schema"] == 1 and rep["passed"]
    assert rep["config"]["generator"] == "numpy.Philox"


def test_thm34_small_dims():
    rep = run_suite(TrialConfig(suite="thm34", dims=(1, 4), trials=60, seed=3))
    s = rep["suites"]["thm34"]
    assert s["counts"]["failed"] == 0
    assert s["worst_identity_residual"] <= 1e-8


@pytest.mark.parametrize("suite", list(SUITES))
def test_every_suite_passes_briefly(suite):
    rep = run_suite(TrialConfig(suite=suite, dims=(1, 5), trials=24, seed=11))
    c = rep["suites"][suite]["counts"]
    assert c["failed"] == 0
    assert sum(c.values()) == 24


def test_trials_are_order_independent():
    cfg = TrialConfig(suite="thm23", trials=10, seed=5)
    forward = [run_trial("thm23", cfg, i) for i in range(10)]
    backward = [run_trial("thm23", cfg, i) for i in reversed(range(10))][::-1]
    assert [t.gap for t in forward] == [t.gap for t in backward]


def test_parallel_matches_serial():
    cfg = TrialConfig(suite="lemma21", trials=20, seed=2)
    serial = run_suite(cfg)
    parallel = run_suite(TrialConfig(suite="lemma21", trials=20, seed=2, workers=2))
    assert strip_timing(serial) == strip_timing(parallel)


def test_failures_are_dumped(tmp_path, monkeypatch):
    from opineq import suites

    def always_fail(rng, n, i, cfg, tr):
        tr.fail_unless(False, "forced")
        return suites.ginibre(n, rng), suites.ginibre(n, rng), {"t": 1.0}

    monkeypatch.setitem(suites.SUITES, "gpl", always_fail)
    rep = run_suite(TrialConfig(suite="gpl", trials=3, seed=0, dump_dir=str(tmp_path)))
    assert rep["failed"] == 3 and not rep["passed"]
    files = sorted(tmp_path.iterdir())
    assert len(files) == 3
    dumped = json.loads(files[0].read_text())
    assert set(dumped) == {"A", "B", "params"}


def test_report_written(tmp_path):
    out = tmp_path / "r.json"
    rep = run_suite(TrialConfig(suite="cor24", trials=5, seed=1, out_path=str(out)))
    assert json.loads(out.read_text())["config"] == rep["config"]
    with pytest.raises(ConfigError):
        run_suite(TrialConfig(suite="cor24", trials=1, out_path=str(tmp_path / "no" / "such" / "r.json")))
