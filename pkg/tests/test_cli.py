import json

import pytest

from opineq.cli import main
from opineq.matrix_io import write_matrix

import numpy as np


def scalar(tmp_path, name, x):
    p = tmp_path / name
    write_matrix(np.array([[x]]), p)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_check_thm32_gap(tmp_path, capsys):
    code, out = run(capsys, "check", scalar(tmp_path, "a", 2), scalar(tmp_path, "b", 1),
                    "--suite", "thm32", "--t", "1")
    res = json.loads(out.out)
    assert code == 0 and res["result"]["holds"]
    assert res["result"]["gap_min_eig"] == pytest.approx(4)


def test_check_thm23_equality(tmp_path, capsys):
    code, out = run(capsys, "check", scalar(tmp_path, "a", 0.5), scalar(tmp_path, "b", 1),
                    "--suite", "thm23", "--p", "2", "--r", "3")
    res = json.loads(out.out)["result"]
    assert code == 0 and res["equality_attained"] and res["equality_predicted"]


def test_check_singular_is_skipped(tmp_path, capsys):
    code, out = run(capsys, "check", scalar(tmp_path, "a", 0), scalar(tmp_path, "b", 1),
                    "--suite", "thm23", "--p", "0.5", "--r", "2")
    assert code == 0 and json.loads(out.out)["status"] == "skipped-precondition"


def test_check_usage_errors(tmp_path, capsys):
    a = scalar(tmp_path, "a", 1)
    b2 = tmp_path / "b2"
    write_matrix(np.eye(2), b2)
    assert run(capsys, "check", a, str(b2), "--suite", "thm32", "--t", "1")[0] == 2
    assert run(capsys, "check", a, a, "--suite", "thm32")[0] == 2
    assert run(capsys, "check", a, str(tmp_path / "missing"), "--suite", "thm32", "--t", "1")[0] == 2
    assert run(capsys, "check", a, a, "--suite", "thm32", "--t", "-1")[0] == 2


def test_check_other_suites(tmp_path, capsys):
    a, b = scalar(tmp_path, "a", -3), scalar(tmp_path, "b", 1)
    for suite in ("thm34", "lemma35", "lemma36", "thm32"):
        code, out = run(capsys, "check", a, b, "--suite", suite, "--t", "0.5")
        assert code == 0, suite
    code, out = run(capsys, "check", a, b, "--suite", "thm31", "--q", "1.5")
    assert code == 0 and json.loads(out.out)["result"]["equality_attained"]


def test_suite_mode(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "--suite", "gpl", "--trials", "20", "--seed", "7", "--dims", "1..4",
                  "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["config"]["dims"] == [1, 4]
    code, res = run(capsys, "--suite", "lemma21", "--trials", "3", "--tol-psd", "1e-8")
    assert code == 0 and json.loads(res.out)["config"]["tolerances"]["eps_psd"] == 1e-8


@pytest.mark.parametrize("argv", [
    ["--suite", "gpl", "--trials", "0"],
    ["--suite", "nope"],
    ["--suite", "gpl", "--dims", "3..1"],
    ["--suite", "gpl", "--dims", "x"],
    ["--suite", "gpl", "--tol-eq", "-1"],
    ["--suite", "gpl", "-t", "3"],
])
def test_config_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2
