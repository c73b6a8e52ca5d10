"""Run every suite at acceptance scale and print a one-line summary per suite.

    python scripts/run_all_suites.py --trials 2000 --seed 42 --out reports/
"""
import argparse
from pathlib import Path

from opineq.matrix_io import write_report
from opineq.suites import SUITES, TrialConfig, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--dims", default="1..8")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    lo, hi = map(int, args.dims.split(".."))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in SUITES:
        rep = run_suite(TrialConfig(suite=name, dims=(lo, hi), trials=args.trials, seed=args.seed,
                                    workers=args.workers))
        s = rep["suites"][name]
        failed += s["counts"]["failed"]
        gap, ident = s["worst_gap_min_eig"], s["worst_identity_residual"]
        print(f"{name:14s} {s['counts']}  worst gap {gap if gap is None else f'{gap:.2e}'}"
              f"  worst identity {ident if ident is None else f'{ident:.2e}'}  {rep['wall_time_s']:.1f}s")
        if args.out:
            write_report(rep, args.out / f"{name}.json")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
