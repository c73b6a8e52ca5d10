"""Seeded verification suites and the report they produce.

A suite runs ``trials`` independent trials.  Trial ``i`` of suite ``k`` draws
everything from ``SeededStream(seed, k * 2**32 + i)``, so trials can run in
any order (or in parallel) and the merged report is identical.  Draws that
violate a precondition are counted as ``skipped``, never re-drawn.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import construct as cons
from . import dw, oracle, st
from .errors import OpineqError, SingularPower
from .kernels import fro, polar
from .matrix_io import dumps, matrix_to_json
from .order import DEFAULT_POLICY, TolerancePolicy, pair_scale
from .sampler import GENERATOR_NAME, SeededStream, draw_params, ginibre, log_uniform, random_pair, random_unitary

SCHEMA = 1
PERTURBATION = 1e-3
#: root-search window for p-angular witnesses, as a ratio a/b
P_ANGULAR_RATIO = 4.0
IMPOSSIBLE_TS = (1.0, 1.5, 2.0)
ORACLE_TOL = 1e-12


class ConfigError(ValueError):
    pass


@dataclass
class TrialConfig:
    suite: str
    dims: tuple[int, int] = (1, 8)
    trials: int = 100
    seed: int = 0
    tolerances: TolerancePolicy = DEFAULT_POLICY
    out_path: Optional[str] = None
    dump_dir: Optional[str] = None
    abstract_form: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        lo, hi = self.dims
        if not 1 <= lo <= hi <= 64:
            raise ConfigError(f"dims must satisfy 1 <= lo <= hi <= 64, got {lo}..{hi}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")


@dataclass
class Trial:
    status: str = "passed"          # passed | failed | skipped
    gap: Optional[float] = None     # worst normalized Löwner gap (gap_min_eig / scale)
    identity: Optional[float] = None  # worst normalized identity residual
    info: dict = field(default_factory=dict)
    dump: Optional[dict] = None

    def fail_unless(self, ok: bool, why: str) -> None:
        if not ok and self.status != "failed":
            self.status = "failed"
            self.info["reason"] = why

    def note_gap(self, value: float) -> None:
        self.gap = value if self.gap is None else min(self.gap, value)

    def note_identity(self, value: float) -> None:
        self.identity = value if self.identity is None else max(self.identity, value)


# --- instance factories shared with the test-suite -------------------------

def unit_perturbation(n: int, rng) -> np.ndarray:
    g = ginibre(n, rng)
    return g / fro(g)


def difference_witness(n, rng):
    t = draw_params(rng, "t")
    b = ginibre(n, rng)
    return cons.Witness(cons.make_difference_witness(b, t), b, 1), {"t": t}


def polar_power_witness(n, rng):
    p = float(rng.uniform(0.05, 0.95))
    t = log_uniform(rng, 0.01, 0.1)
    spec = cons.random_spec(n, rng, zero_fraction=0.2)
    return cons.make_polar_power_witness(spec, p, t, ratio=16.0), {"p": p, "t": t}


def p_angular_witness(n, rng, p: Optional[float] = None):
    if p is None:
        p = draw_params(rng, "p_t1")
        r = draw_params(rng, "r")
    else:
        # at p = 0 the nontrivial root is a = -r b / (2 - r); r <= 1.6 keeps it within the window
        r = float(1.0 + rng.uniform(0.1, 0.6))
    spec = cons.random_spec(n, rng)
    return cons.make_p_angular_witness(spec, p, r, ratio=P_ANGULAR_RATIO), {"p": p, "r": r}


def polar_difference_witness(n, rng):
    t = float(rng.uniform(0.05, 0.95))
    spec = cons.random_spec(n, rng)
    return cons.make_polar_difference_witness(spec, t), {"t": t}


WITNESSES: dict[str, tuple[Callable, Callable]] = {
    # name: (factory, checker(a, b, params, pol) -> CheckReport)
    "difference": (difference_witness, lambda a, b, q, pol: dw.difference_bound(a, b, q["t"], pol)),
    "polar_power": (polar_power_witness, lambda a, b, q, pol: dw.polar_power_bound(a, b, q["p"], q["t"], pol)),
    "p_angular": (p_angular_witness, lambda a, b, q, pol: dw.p_angular_bound(a, b, q["p"], q["r"], pol)),
    "polar_difference": (polar_difference_witness,
                         lambda a, b, q, pol: st.polar_difference_bound(a, b, q["t"], pol)),
}


def conjugated_witness(kind: str, n: int, rng):
    """Normalized witness moved off the diagonal by a Haar unitary; returns (diag, conj, params)."""
    w, params = WITNESSES[kind][0](n, rng)
    w = cons.normalize(w)
    return w, cons.conjugate(w, random_unitary(n, rng)), params


# --- trials ----------------------------------------------------------------

def _record(tr: Trial, rep: dw.CheckReport) -> None:
    tr.note_gap(rep.gap_min_eig / rep.scale)
    tr.fail_unless(rep.holds, f"{rep.variant}: inequality fails (gap {rep.gap_min_eig:.3e})")
    tr.fail_unless(not rep.equality_predicted or rep.equality_attained,
                   f"{rep.variant}: equality predicted but not attained")


def _pair(n, rng, i, *, invertible=False):
    # every third trial uses a rank-deficient factor where the statement permits it
    return random_pair(n, rng, deficient=(not invertible and i % 3 == 0), invertible_only=invertible)


def _note_rank(tr, a, b, pol):
    n = a.shape[0]
    tr.info["rank_deficient"] = min(polar(a, pol.rank_cutoff_factor).support_rank,
                                    polar(b, pol.rank_cutoff_factor).support_rank) < n


def trial_gpl(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i)
    t = draw_params(rng, "t") * (1 if rng.random() < 0.5 else -1)
    res = dw.gpl_residual(a, b, t) / pair_scale(a, b)
    tr.note_identity(res)
    tr.fail_unless(res <= cfg.tolerances.eps_identity, f"parallelogram residual {res:.3e}")
    return a, b, {"t": t}


def trial_lemma21(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i)
    _note_rank(tr, a, b, cfg.tolerances)
    t = draw_params(rng, "t")
    _record(tr, dw.difference_bound(a, b, t, cfg.tolerances))
    return a, b, {"t": t}


def trial_thm22(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i)
    _note_rank(tr, a, b, cfg.tolerances)
    p, t = draw_params(rng, "p_t0"), draw_params(rng, "t")
    rep = dw.polar_power_bound(a, b, p, t, cfg.tolerances, abstract_form=cfg.abstract_form)
    _record(tr, rep)
    if "abstract_gap_min_eig" in rep.extra:
        tr.info["abstract_gap"] = rep.extra["abstract_gap_min_eig"] / rep.scale
    return a, b, {"p": p, "t": t}


def trial_thm23(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i, invertible=True)
    p, r = draw_params(rng, "p_t1"), draw_params(rng, "r")
    rep = dw.p_angular_bound(a, b, p, r, cfg.tolerances, abstract_form=cfg.abstract_form)
    _record(tr, rep)
    if "abstract_gap_min_eig" in rep.extra:
        tr.info["abstract_gap"] = rep.extra["abstract_gap_min_eig"] / rep.scale
    return a, b, {"p": p, "r": r}


def trial_cor24(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i, invertible=True)
    r = draw_params(rng, "r")
    rep = dw.angular_bound(a, b, r, cfg.tolerances)
    _record(tr, rep)
    agree = rep.extra["p_angular_agreement"] / rep.scale
    tr.note_identity(agree)
    tr.fail_unless(agree <= cfg.tolerances.eps_identity, f"p = 0 reduction disagrees by {agree:.3e}")
    return a, b, {"r": r}


def trial_prop25(rng, n, i, cfg, tr):
    pol = cfg.tolerances
    if i % 2 == 0:
        w, wc, q = conjugated_witness("p_angular", n, rng)
        a, b = wc.a, wc.b
        rep = dw.p_angular_equality_conditions(a, b, q["p"], q["r"], pol)
        tr.info["instance"] = "witness"
        tr.fail_unless(rep.all_hold, f"witness residuals {rep.residuals}")
    else:
        a, b = _pair(n, rng, i, invertible=True)
        q = {"p": draw_params(rng, "p_t1"), "r": draw_params(rng, "r")}
        rep = dw.p_angular_equality_conditions(a, b, q["p"], q["r"], pol)
        tr.info["instance"] = "generic"
        tr.fail_unless(rep.consistent, f"conditions disagree: {rep.residuals}")
    tr.info["min_residual"] = min(rep.residuals) / rep.scale
    return a, b, q


def trial_prop26(rng, n, i, cfg, tr):
    p0 = 0.0 if i % 4 == 0 else None
    _, wc, q = conjugated_witness("p_angular", n, rng) if p0 is None else _p0_witness(n, rng)
    con = dw.p_angular_equality_consequences(wc.a, wc.b, q["p"], q["r"], cfg.tolerances)
    tr.note_identity(con.identity_residual / con.scale)
    tr.note_gap(con.order.gap_min_eig / con.scale)
    tr.fail_unless(con.identity_holds, f"identity residual {con.identity_residual:.3e}")
    tr.fail_unless(con.order.holds, "square-root bound fails")
    tr.fail_unless(con.absolute_holds, f"absolute-value residual {con.absolute_residual:.3e}")
    if con.remark_residual is not None:
        tr.info["remark_residual"] = con.remark_residual / con.scale
        tr.fail_unless(con.remark_residual <= cfg.tolerances.eps_eq * con.scale, "p = 0 remark fails")
    return wc.a, wc.b, q


def _p0_witness(n, rng):
    w, q = p_angular_witness(n, rng, p=0.0)
    w = cons.normalize(w)
    return w, cons.conjugate(w, random_unitary(n, rng)), q


def trial_thm32(rng, n, i, cfg, tr):
    a, b = _pair(n, rng, i)
    _note_rank(tr, a, b, cfg.tolerances)
    t = draw_params(rng, "t")
    _record(tr, st.polar_difference_bound(a, b, t, cfg.tolerances))
    return a, b, {"t": t}


def trial_lemma33(rng, n, i, cfg, tr):
    _, wc, q = conjugated_witness("polar_difference", n, rng)
    v = st.dominance_consequences(wc.a, wc.b, q["t"], cfg.tolerances)
    for name in ("difference", "modulus", "support"):
        verdict = getattr(v, name)
        tr.note_gap(verdict.gap_min_eig / verdict.scale)
        tr.fail_unless(verdict.holds, f"{name} order fails")
    if v.identity_residual is not None:
        tr.note_identity(v.identity_residual / pair_scale(wc.a, wc.b))
    tr.fail_unless(v.identity_holds is True, "identity under equal supports fails")
    return wc.a, wc.b, q


def trial_lemma35(rng, n, i, cfg, tr):
    if i % 2 == 0:
        _, wc, q = conjugated_witness("polar_difference", n, rng)
        a, b = wc.a, wc.b
        tr.info["instance"] = "witness"
    else:
        a, b = _pair(n, rng, i, invertible=True)
        q = {"t": draw_params(rng, "t")}
        tr.info["instance"] = "generic"
    eq = st.absolute_split_equivalence(a, b, q["t"], cfg.tolerances)
    tr.fail_unless(eq.agrees, f"directions disagree ({eq.forward_residual:.3e}, {eq.backward_residuals})")
    if i % 2 == 0:
        tr.fail_unless(eq.forward_holds, "witness fails forward condition")
    return a, b, q


def trial_lemma36(rng, n, i, cfg, tr):
    _, wc, q = conjugated_witness("polar_difference", n, rng)
    pol = cfg.tolerances
    ident = st.anticommutator_identity(wc.a, wc.b, q["t"], pol)
    scale = pair_scale(wc.a, wc.b)
    comm = st.commutator_residual(wc.a, wc.b) / scale
    tr.note_identity(max(ident.residual / scale, comm))
    tr.fail_unless(ident.holds, f"anticommutator residual {ident.residual:.3e}")
    tr.fail_unless(comm <= pol.eps_identity, f"commutator residual {comm:.3e}")
    return wc.a, wc.b, q


def trial_thm34(rng, n, i, cfg, tr):
    pol = cfg.tolerances
    if i % 2 == 0:
        _, wc, q = conjugated_witness("polar_difference", n, rng)
        cls = st.characterize_polar_equality(wc.a, wc.b, q["t"], pol)
        tr.info["instance"] = cls.kind
        if cls.structural_residuals is not None:
            tr.note_identity(max(cls.structural_residuals) / pair_scale(wc.a, wc.b))
        tr.fail_unless(cls.holds, f"structural residuals {cls.structural_residuals}")
        return wc.a, wc.b, q
    a, b = cons.normalize(cons.Witness(*_pair(n, rng, i), 0))[:2]
    t = IMPOSSIBLE_TS[int(rng.integers(0, len(IMPOSSIBLE_TS)))]
    q = {"t": t}
    if fro(a - b) < 0.1 * pair_scale(a, b):
        tr.status = "skipped"
        tr.info["reason"] = "||A-B||_F below 0.1*scale"
        return a, b, q
    rep = st.polar_difference_bound(a, b, t, pol)
    tr.info["instance"] = "impossibility"
    tr.info["equality_residual"] = rep.equality_residual / rep.scale
    tr.fail_unless(not rep.equality_attained and not rep.equality_predicted,
                   "equality attained with t >= 1 and A != B")
    return a, b, q


CONSTRUCTORS = tuple(WITNESSES)


def trial_constructors(rng, n, i, cfg, tr):
    kind = CONSTRUCTORS[i % len(CONSTRUCTORS)]
    check = WITNESSES[kind][1]
    pol = cfg.tolerances
    w, wc, q = conjugated_witness(kind, n, rng)
    tr.info["constructor"] = kind
    tr.info["nontrivial"] = int(w.nontrivial)
    for label, (a, b) in (("diagonal", (w.a, w.b)), ("conjugated", (wc.a, wc.b))):
        rep = check(a, b, q, pol)
        tr.note_identity(max(rep.equality_residual, rep.gap_norm) / rep.scale)
        tr.fail_unless(rep.equality_attained and rep.equality_predicted, f"{label} witness not an equality")
    pert = check(wc.a + PERTURBATION * unit_perturbation(n, rng), wc.b, q, pol)
    tr.info["perturbation_breaks"] = not pert.equality_attained
    return wc.a, wc.b, q


def _close(m: float, o: float, scale: float) -> bool:
    return abs(m - o) <= ORACLE_TOL * scale


def trial_scalar_oracle(rng, n, i, cfg, tr):
    """All evaluators on 1x1 inputs against :mod:`opineq.oracle`."""
    pol = cfg.tolerances
    a, b = complex(ginibre(1, rng)[0, 0]), complex(ginibre(1, rng)[0, 0])
    if i % 5 == 0:
        b = 0j if i % 10 == 0 else b
    A, B = np.array([[a]]), np.array([[b]])
    t, p0, p1, r = (draw_params(rng, k) for k in ("t", "p_t0", "p_t1", "r"))
    worst = 0.0
    checks = []

    def cmp_sides(rep, sides):
        checks.append((rep.lhs[0, 0].real, sides.lhs, rep.scale))
        checks.append((rep.rhs[0, 0].real, sides.rhs, rep.scale))
        checks.append((rep.equality_residual, sides.equality_residual, rep.scale))

    sc = pair_scale(A, B)
    checks.append((dw.gpl_residual(A, B, t), oracle.gpl(a, b, t), sc))
    cmp_sides(dw.difference_bound(A, B, t, pol), oracle.difference(a, b, t))
    cmp_sides(dw.polar_power_bound(A, B, p0, t, pol), oracle.polar_power(a, b, p0, t))
    cmp_sides(st.polar_difference_bound(A, B, t, pol), oracle.polar_difference(a, b, t))
    if b != 0:
        cmp_sides(dw.p_angular_bound(A, B, p1, r, pol), oracle.p_angular(a, b, p1, r))
        cmp_sides(dw.angular_bound(A, B, r, pol), oracle.angular(a, b, r))
        eqr = dw.p_angular_equality_conditions(A, B, p1, r, pol)
        for m, o in zip(eqr.residuals, oracle.equality_conditions(a, b, p1, r)):
            checks.append((m, o, eqr.scale))
        split = st.absolute_split_equivalence(A, B, t, pol)
        for m, o in zip((split.forward_residual, *split.backward_residuals), oracle.split_residuals(a, b, t)):
            checks.append((m, o, sc))

    # conditional statements need scalar equality witnesses
    w, q = p_angular_witness(1, rng)
    wa, wb = complex(w.a[0, 0]), complex(w.b[0, 0])
    con = dw.p_angular_equality_consequences(w.a, w.b, q["p"], q["r"], pol)
    o_ident, o_gap, o_abs = oracle.equality_consequences(wa, wb, q["p"], q["r"])
    checks += [(con.identity_residual, o_ident, con.scale), (con.order.gap_min_eig, o_gap, con.scale),
               (con.absolute_residual, o_abs, con.scale)]
    w, q = polar_difference_witness(1, rng)
    wa, wb, tt = complex(w.a[0, 0]), complex(w.b[0, 0]), q["t"]
    ws = pair_scale(w.a, w.b)
    dom = st.dominance_consequences(w.a, w.b, tt, pol)
    for m, o in zip((dom.difference.gap_min_eig, dom.modulus.gap_min_eig, dom.support.gap_min_eig),
                    oracle.dominance(wa, wb, tt)):
        checks.append((m, o, ws))
    checks.append((st.anticommutator_identity(w.a, w.b, tt, pol).residual, oracle.anticommutator(wa, wb, tt), ws))
    cls = st.characterize_polar_equality(w.a, w.b, tt, pol)
    for m, o in zip(cls.structural_residuals, oracle.structural(wa, wb, tt)):
        checks.append((m, o, ws))

    for m, o, scale in checks:
        worst = max(worst, abs(m - o) / scale)
        tr.fail_unless(_close(m, o, scale), f"matrix {m!r} vs oracle {o!r}")
    tr.note_identity(worst)
    tr.info["comparisons"] = len(checks)
    return A, B, {"t": t, "p_t0": p0, "p_t1": p1, "r": r}


SUITES: dict[str, Callable] = {
    "gpl": trial_gpl,
    "lemma21": trial_lemma21,
    "thm22": trial_thm22,
    "thm23": trial_thm23,
    "cor24": trial_cor24,
    "prop25": trial_prop25,
    "prop26": trial_prop26,
    "thm32": trial_thm32,
    "lemma33": trial_lemma33,
    "lemma35": trial_lemma35,
    "lemma36": trial_lemma36,
    "thm34": trial_thm34,
    "constructors": trial_constructors,
    "scalar_oracle": trial_scalar_oracle,
}
SUITE_INDEX = {name: k for k, name in enumerate(SUITES)}


def run_trial(suite: str, cfg: TrialConfig, i: int) -> Trial:
    rng = SeededStream(cfg.seed, SUITE_INDEX[suite] * 2 ** 32 + i).generator()
    lo, hi = cfg.dims
    n = 1 if suite == "scalar_oracle" else int(rng.integers(lo, hi + 1))
    tr = Trial(info={"n": n})
    a = b = params = None
    try:
        a, b, params = SUITES[suite](rng, n, i, cfg, tr)
    except SingularPower as exc:
        tr.status, tr.info["reason"] = "skipped", f"precondition: {exc}"
    except OpineqError as exc:
        tr.fail_unless(False, f"{type(exc).__name__}: {exc}")
    if tr.status == "failed" and a is not None:
        tr.dump = {"A": matrix_to_json(a), "B": matrix_to_json(b), "params": params}
    return tr


def _clean(x):
    if isinstance(x, float):
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return _clean(x.item())
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _summarize(suite: str, cfg: TrialConfig, trials: list[Trial]) -> dict:
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    for tr in trials:
        counts[tr.status] += 1
    gaps = [tr.gap for tr in trials if tr.gap is not None]
    idents = [tr.identity for tr in trials if tr.identity is not None]
    out = {
        "counts": counts,
        "worst_gap_min_eig": min(gaps) if gaps else None,
        "worst_identity_residual": max(idents) if idents else None,
        "trials": [dict(i=i, status=tr.status, gap=tr.gap, identity=tr.identity, **tr.info)
                   for i, tr in enumerate(trials)],
    }
    if suite == "constructors":
        broke = [tr.info.get("perturbation_breaks") for tr in trials if "perturbation_breaks" in tr.info]
        out["perturbation_break_fraction"] = sum(broke) / len(broke) if broke else None
    return _clean(out)


def _run_one(suite: str, cfg: TrialConfig) -> tuple[dict, list[Trial]]:
    idx = range(cfg.trials)
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            trials = list(ex.map(run_trial, [suite] * cfg.trials, [cfg] * cfg.trials, idx))
    else:
        trials = [run_trial(suite, cfg, i) for i in idx]
    return _summarize(suite, cfg, trials), trials


def run_suite(cfg: TrialConfig) -> dict:
    """Run the configured suite(s) and return the report dict (schema 1)."""
    cfg.validate()
    start = time.perf_counter()
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    suites = {}
    failed = 0
    for name in names:
        summary, trials = _run_one(name, cfg)
        suites[name] = summary
        failed += summary["counts"]["failed"]
        if cfg.dump_dir:
            _dump_failures(name, trials, cfg.dump_dir)
    report = {
        "schema": SCHEMA,
        "config": _clean({
            "suite": cfg.suite, "dims": list(cfg.dims), "trials": cfg.trials, "seed": cfg.seed,
            "tolerances": asdict(cfg.tolerances), "abstract_form": cfg.abstract_form,
            "generator": GENERATOR_NAME,
        }),
        "suites": suites,
        "failed": failed,
        "passed": failed == 0,
        "wall_time_s": time.perf_counter() - start,
    }
    if cfg.out_path:
        try:
            Path(cfg.out_path).write_text(dumps(report) + "\n")
        except OSError as exc:
            raise ConfigError(f"cannot write report: {exc}") from None
    return report


def _dump_failures(suite: str, trials: list[Trial], dump_dir: str) -> None:
    d = Path(dump_dir)
    try:
        d.mkdir(parents=True, exist_ok=True)
        for i, tr in enumerate(trials):
            if tr.dump is not None:
                (d / f"{suite}_{i:06d}.json").write_text(dumps(_clean(tr.dump)))
    except OSError as exc:
        raise ConfigError(f"cannot write failure dumps: {exc}") from None


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "wall_time_s"}
