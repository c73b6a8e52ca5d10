"""Exact equality witnesses.

All witnesses are diagonal: each diagonal entry turns the matrix equality
condition into a scalar equation in ``a = |A|_ii`` given ``b = |B|_ii``,
solved by bisection.  Entries of ``A`` may carry the same phase as ``B`` or
the opposite one; whichever nontrivial positive root lies closest to ``b``
(in log distance) is used.  The result can then be moved off the diagonal
with :func:`conjugate`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import bisect

from .errors import RootNotFound
from .kernels import dagger

BISECT_RTOL = 1e-13
BISECT_MAXITER = 200
GRID_POINTS_PER_DECADE = 50
#: half-width (relative) of the window around the trivial root a = b skipped by the scan
TRIVIAL_WINDOW = 1e-3


@dataclass(frozen=True)
class DiagonalSpec:
    """Diagonal data for a witness.

    ``b_values`` is the diagonal of ``|B|``, ``signs`` the unit-modulus phases
    of ``B``, ``active`` the indices where a nontrivial solution is wanted and
    ``zeros`` indices where both ``A`` and ``B`` vanish (rank-deficient
    witnesses; only meaningful where the condition allows it).
    """

    b_values: tuple[float, ...]
    signs: tuple[complex, ...] = ()
    active: frozenset = frozenset()
    zeros: frozenset = frozenset()

    def __post_init__(self):
        if not self.signs:
            object.__setattr__(self, "signs", (1.0,) * len(self.b_values))
        if len(self.signs) != len(self.b_values):
            raise ValueError("signs and b_values must have equal length")
        if any(not b > 0 for b in self.b_values):
            raise ValueError("b_values must be strictly positive")
        if any(abs(abs(s) - 1) > 1e-12 for s in self.signs):
            raise ValueError("signs must have unit modulus")
        if not (set(self.active) | set(self.zeros)) <= set(range(self.n)):
            raise ValueError("active/zeros indices out of range")

    @property
    def n(self) -> int:
        return len(self.b_values)

    def b_matrix(self) -> np.ndarray:
        d = np.array(self.signs, dtype=np.complex128) * np.array(self.b_values)
        d[list(self.zeros)] = 0
        return np.diag(d)


class Witness(NamedTuple):
    a: np.ndarray
    b: np.ndarray
    nontrivial: int  # entries solved by a root other than a = b


def positive_roots(f: Callable, b: float, ratio: float = 1e6,
                   exclude_trivial: bool = False) -> list[float]:
    """All sign-change roots of ``f`` on a log grid over ``[b/ratio, b*ratio]``.

    ``f`` must accept numpy arrays.  With ``exclude_trivial`` the window
    ``b * (1 +- TRIVIAL_WINDOW)`` is skipped.
    """
    decades = 2 * np.log10(ratio)
    x = b * np.logspace(-np.log10(ratio), np.log10(ratio), int(decades * GRID_POINTS_PER_DECADE) + 1)
    if exclude_trivial:
        x = x[np.abs(x / b - 1) > TRIVIAL_WINDOW]
    with np.errstate(all="ignore"):
        v = f(x)
    roots = []
    for i in range(len(x) - 1):
        if exclude_trivial and x[i] < b < x[i + 1]:
            continue
        if v[i] == 0:
            roots.append(float(x[i]))
        elif np.isfinite(v[i]) and np.isfinite(v[i + 1]) and v[i] * v[i + 1] < 0:
            roots.append(float(bisect(f, x[i], x[i + 1], xtol=1e-300, rtol=BISECT_RTOL,
                                      maxiter=BISECT_MAXITER)))
    return roots


def solve_entry(same: Callable, flip: Callable, b: float, ratio: float = 1e6) -> tuple[float, float]:
    """Nontrivial ``(a, relative_sign)`` closest to ``b``; raises :class:`RootNotFound`."""
    cands = [(r, 1.0) for r in positive_roots(same, b, ratio, exclude_trivial=True)]
    cands += [(r, -1.0) for r in positive_roots(flip, b, ratio)]
    if not cands:
        raise RootNotFound(f"no nontrivial positive root for b = {b}")
    return min(cands, key=lambda c: abs(np.log(c[0] / b)))


def _assemble(spec: DiagonalSpec, equations, ratio: float) -> Witness:
    a = np.zeros(spec.n, dtype=np.complex128)
    nontrivial = 0
    for i, (b, sign) in enumerate(zip(spec.b_values, spec.signs)):
        if i in spec.zeros:
            continue
        mag, rel = b, 1.0
        if i in spec.active:
            try:
                mag, rel = solve_entry(*equations(b), b, ratio)
                nontrivial += 1
            except RootNotFound:
                pass
        a[i] = rel * sign * mag
    return Witness(np.diag(a), spec.b_matrix(), nontrivial)


def make_difference_witness(b, t: float) -> np.ndarray:
    """``A = -B/t`` attains equality in the difference bound."""
    return -np.asarray(b, dtype=np.complex128) / t


def make_p_angular_witness(spec: DiagonalSpec, p: float, r: float, ratio: float = 1e6) -> Witness:
    """Entries solve ``(r-1)(a -+ b)a^{p-1} = +-b(a^{p-1} - b^{p-1})`` (same/opposite phase)."""
    if not r > 1:
        raise ValueError("r must exceed 1")
    if spec.zeros:
        raise ValueError("p-angular witnesses need invertible |A|, |B|")

    def equations(b):
        same = lambda x: (r - 1) * (x - b) * x ** (p - 1) - b * (x ** (p - 1) - b ** (p - 1))
        flip = lambda x: (r - 1) * (x + b) * x ** (p - 1) + b * (x ** (p - 1) - b ** (p - 1))
        return same, flip

    return _assemble(spec, equations, ratio)


def make_polar_power_witness(spec: DiagonalSpec, p: float, t: float, ratio: float = 1e6) -> Witness:
    """Entries solve ``t(a -+ b) +- (b^p a^{1-p} - b) = 0``; same phase only admits ``a = b``."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if not t > 0:
        raise ValueError("t must be positive")

    def equations(b):
        same = lambda x: t * (x - b) + b ** p * x ** (1 - p) - b
        flip = lambda x: -t * (x + b) + b ** p * x ** (1 - p) - b
        return same, flip

    return _assemble(spec, equations, ratio)


def make_polar_difference_witness(spec: DiagonalSpec, t: float) -> Witness:
    """``A = B(I - 2/(1-t) P)`` with ``P`` the diagonal projection onto ``spec.active``."""
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    if spec.zeros:
        raise ValueError("zeros are not supported for this witness")
    proj = np.zeros(spec.n)
    proj[list(spec.active)] = 1.0
    b = spec.b_matrix()
    a = b @ np.diag(1 - 2 / (1 - t) * proj)
    return Witness(a.astype(np.complex128), b, len(spec.active))


def conjugate(w: Witness, q: np.ndarray) -> Witness:
    """Unitary similarity ``(QAQ*, QBQ*)``."""
    return Witness(q @ w.a @ dagger(q), q @ w.b @ dagger(q), w.nontrivial)


def random_spec(n: int, rng: np.random.Generator, *, active_fraction: float = 0.6,
                zero_fraction: float = 0.0, b_range: tuple[float, float] = (0.5, 1.5),
                real_signs: bool = False) -> DiagonalSpec:
    """A random :class:`DiagonalSpec`; at least one index is active when ``n > 0``."""
    b = rng.uniform(*b_range, size=n)
    if real_signs:
        signs = rng.choice([-1.0, 1.0], size=n)
    else:
        signs = np.exp(1j * rng.uniform(0, 2 * np.pi, size=n))
    active = set(np.flatnonzero(rng.random(n) < active_fraction).tolist())
    zeros = set(np.flatnonzero(rng.random(n) < zero_fraction).tolist()) - active
    if not active:
        active = {int(rng.integers(0, n))}
        zeros -= active
    return DiagonalSpec(tuple(float(x) for x in b), tuple(complex(s) for s in signs),
                        frozenset(active), frozenset(zeros))


def normalize(w: Witness) -> Witness:
    """Rescale so that ``max(||A||_F, ||B||_F) == 1``.

    Every equality condition handled here is positively homogeneous in
    ``(A, B)``, so the rescaled pair is still a witness.
    """
    m = max(np.linalg.norm(w.a), np.linalg.norm(w.b))
    if m == 0:
        return w
    return Witness(w.a / m, w.b / m, w.nontrivial)
