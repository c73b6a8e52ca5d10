"""Command line entry point.

Suite mode::

    opineq --suite thm23 --dims 1..8 --trials 2000 --seed 42 --out report.json

Single-instance mode::

    opineq check A.json B.json --suite thm23 --p 2 --r 3

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from typing import Optional, Sequence

import numpy as np

from . import dw, st
from .errors import HypothesisNotSatisfied, MatrixError, OpineqError, SingularPower
from .matrix_io import dumps, read_matrix
from .order import DEFAULT_POLICY, TolerancePolicy, pair_scale
from .suites import SUITES, ConfigError, TrialConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _policy(args) -> TolerancePolicy:
    try:
        return DEFAULT_POLICY.with_overrides(eps_psd=args.tol_psd, eps_eq=args.tol_eq)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def suite_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="opineq", description="Run a seeded verification suite.",
                 allow_abbrev=False)
    ap.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    ap.add_argument("--dims", type=parse_dims, default=(1, 8), metavar="LO..HI")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol-psd", type=float)
    ap.add_argument("--tol-eq", type=float)
    ap.add_argument("--out", metavar="FILE", help="write the JSON report here instead of stdout")
    ap.add_argument("--dump-failures", metavar="DIR")
    ap.add_argument("--report-abstract-form", action="store_true",
                    help="also evaluate the alternative middle-term form and report its gap")
    ap.add_argument("--workers", type=int, default=1)
    return ap


CHECK_PARAMS = {
    "gpl": ("t",), "lemma21": ("t",), "thm22": ("p", "t"), "thm23": ("p", "r"), "cor24": ("r",),
    "prop25": ("p", "r"), "prop26": ("p", "r"), "thm31": ("q",), "thm32": ("t",),
    "lemma33": ("t",), "lemma35": ("t",), "lemma36": ("t",), "thm34": ("t",),
}


def check_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="opineq check", description="Evaluate one statement on a matrix pair.",
                 allow_abbrev=False)
    ap.add_argument("a", metavar="A.json")
    ap.add_argument("b", metavar="B.json")
    ap.add_argument("--suite", required=True, choices=list(CHECK_PARAMS))
    for name in ("p", "t", "r", "q"):
        ap.add_argument(f"--{name}", type=float)
    ap.add_argument("--tol-psd", type=float)
    ap.add_argument("--tol-eq", type=float)
    ap.add_argument("--report-abstract-form", action="store_true")
    return ap


def _jsonable(x):
    if isinstance(x, dw.CheckReport):
        return x.to_dict()
    if dataclasses.is_dataclass(x):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def evaluate(suite: str, a, b, params: dict, pol: TolerancePolicy, abstract_form: bool = False):
    """Run one statement; returns ``(result, ok)``."""
    p, t, r, q = (params.get(k) for k in "ptrq")
    if suite == "gpl":
        res = dw.gpl_residual(a, b, t)
        scale = pair_scale(a, b)
        return {"residual": res, "scale": scale}, res <= pol.eps_identity * scale
    if suite == "lemma21":
        rep = dw.difference_bound(a, b, t, pol)
    elif suite == "thm22":
        rep = dw.polar_power_bound(a, b, p, t, pol, abstract_form=abstract_form)
    elif suite == "thm23":
        rep = dw.p_angular_bound(a, b, p, r, pol, abstract_form=abstract_form)
    elif suite == "cor24":
        rep = dw.angular_bound(a, b, r, pol)
    elif suite == "thm31":
        rep = st.conjugate_exponent_bound(a, b, q, pol)
    elif suite == "thm32":
        rep = st.polar_difference_bound(a, b, t, pol)
    elif suite == "prop25":
        res = dw.p_angular_equality_conditions(a, b, p, r, pol)
        return res, res.consistent
    elif suite == "prop26":
        res = dw.p_angular_equality_consequences(a, b, p, r, pol)
        return res, res.all_hold
    elif suite == "lemma33":
        res = st.dominance_consequences(a, b, t, pol)
        return res, res.difference.holds and res.modulus.holds and res.support.holds \
            and res.identity_holds is not False
    elif suite == "lemma35":
        res = st.absolute_split_equivalence(a, b, t, pol)
        return res, res.agrees
    elif suite == "lemma36":
        res = st.anticommutator_identity(a, b, t, pol)
        return res, res.holds
    elif suite == "thm34":
        res = st.characterize_polar_equality(a, b, t, pol)
        return res, res.holds
    else:
        raise ConfigError(f"unknown suite {suite!r}")
    ok = rep.holds and (rep.equality_attained or not rep.equality_predicted)
    return rep, ok


def run_check(argv: Sequence[str]) -> int:
    args = check_parser().parse_args(argv)
    missing = [k for k in CHECK_PARAMS[args.suite] if getattr(args, k) is None]
    if missing:
        print(f"opineq check: --suite {args.suite} needs " + ", ".join(f"--{k}" for k in missing),
              file=sys.stderr)
        return EXIT_USAGE
    try:
        pol = _policy(args)
        a, b = read_matrix(args.a), read_matrix(args.b)
        dw.check_pair(a, b)
    except (OSError, MatrixError, ConfigError) as exc:
        print(f"opineq check: {exc}", file=sys.stderr)
        return EXIT_USAGE
    params = {k: getattr(args, k) for k in CHECK_PARAMS[args.suite]}
    try:
        result, ok = evaluate(args.suite, a, b, params, pol, args.report_abstract_form)
    except (SingularPower, HypothesisNotSatisfied) as exc:
        print(dumps({"status": "skipped-precondition", "suite": args.suite, "reason": str(exc)}))
        return EXIT_OK
    except (ValueError, OpineqError) as exc:
        print(f"opineq check: {exc}", file=sys.stderr)
        return EXIT_FAIL if isinstance(exc, AssertionError) else EXIT_USAGE
    out = {"status": "passed" if ok else "failed", "suite": args.suite, "params": params,
           "result": _jsonable(result)}
    print(dumps(out))
    return EXIT_OK if ok else EXIT_FAIL


def run(argv: Sequence[str]) -> int:
    args = suite_parser().parse_args(argv)
    try:
        cfg = TrialConfig(suite=args.suite, dims=args.dims, trials=args.trials, seed=args.seed,
                          tolerances=_policy(args), out_path=args.out, dump_dir=args.dump_failures,
                          abstract_form=args.report_abstract_form, workers=max(1, args.workers))
        report = run_suite(cfg)
    except ConfigError as exc:
        print(f"opineq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        print(f"wrote {args.out}: {report['failed']} failed trial(s)")
    else:
        print(dumps(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "check":
        return run_check(argv[1:])
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
