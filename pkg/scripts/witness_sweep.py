"""How often do constructed witnesses survive a small perturbation?

Sweeps the root-search window (ratio) for p-angular witnesses and the
parameter box for polar-power witnesses, reporting the fraction of entries
that got a nontrivial root and the fraction of witnesses whose equality is
broken by a 1e-3 perturbation of A.  Used to pick the defaults in
``opineq.suites``.
"""
import argparse

import numpy as np

from opineq import construct as cons
from opineq import dw
from opineq.sampler import SeededStream, draw_params, log_uniform, random_unitary
from opineq.suites import PERTURBATION, unit_perturbation


def p_angular(ratio, count, seed):
    broke = nontrivial = 0
    for i in range(count):
        rng = SeededStream(seed, i).generator()
        n = int(rng.integers(1, 9))
        p, r = draw_params(rng, "p_t1"), draw_params(rng, "r")
        w = cons.normalize(cons.make_p_angular_witness(cons.random_spec(n, rng), p, r, ratio=ratio))
        w = cons.conjugate(w, random_unitary(n, rng))
        nontrivial += w.nontrivial > 0
        rep = dw.p_angular_bound(w.a + PERTURBATION * unit_perturbation(n, rng), w.b, p, r)
        broke += not rep.equality_attained
    return broke / count, nontrivial / count


def polar_power(p_box, t_box, count, seed):
    broke = nontrivial = 0
    for i in range(count):
        rng = SeededStream(seed, i).generator()
        n = int(rng.integers(1, 9))
        p, t = float(rng.uniform(*p_box)), log_uniform(rng, *t_box)
        spec = cons.random_spec(n, rng, zero_fraction=0.2)
        w = cons.normalize(cons.make_polar_power_witness(spec, p, t, ratio=16))
        w = cons.conjugate(w, random_unitary(n, rng))
        nontrivial += w.nontrivial > 0
        rep = dw.polar_power_bound(w.a + PERTURBATION * unit_perturbation(n, rng), w.b, p, t)
        broke += not rep.equality_attained
    return broke / count, nontrivial / count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("p-angular witnesses")
    for ratio in (16, 4, 2):
        b, nt = p_angular(ratio, args.count, args.seed)
        print(f"  ratio {ratio:>3}: break {b:.2%}  nontrivial {nt:.2%}")
    print("polar-power witnesses")
    for p_box, t_box in (((0.05, 1.0), (1e-3, 0.1)), ((0.05, 0.95), (1e-2, 0.1)), ((0.05, 0.95), (1e-2, 1.0))):
        b, nt = polar_power(p_box, t_box, args.count, args.seed)
        print(f"  p in {p_box}, t in {t_box}: break {b:.2%}  nontrivial {nt:.2%}")


if __name__ == "__main__":
    np.seterr(all="ignore")
    main()
