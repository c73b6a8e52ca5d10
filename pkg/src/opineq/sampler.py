"""Seeded random instances: Ginibre draws, rank-deficient and invertible pairs, parameters."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .kernels import dagger, svd

GENERATOR_NAME = "numpy.Philox"


@dataclass(frozen=True)
class SeededStream:
    """``(master_seed, stream_id)`` names one reproducible random stream."""

    master_seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))


RNGLike = Union[np.random.Generator, SeededStream]


def _gen(rng: RNGLike) -> np.random.Generator:
    return rng.generator() if isinstance(rng, SeededStream) else rng


def ginibre(n: int, rng: RNGLike, cols: int | None = None) -> np.ndarray:
    """i.i.d. complex normal entries, real and imaginary parts each of unit variance."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = _gen(rng)
    shape = (n, n if cols is None else cols)
    return g.standard_normal(shape) + 1j * g.standard_normal(shape)


def rank_deficient(n: int, k: int, rng: RNGLike) -> np.ndarray:
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    if k == 0:
        return np.zeros((n, n), dtype=np.complex128)
    g = _gen(rng)
    return ginibre(n, g, cols=k) @ ginibre(k, g, cols=n)


def random_psd(n: int, rng: RNGLike) -> np.ndarray:
    x = ginibre(n, rng)
    return 0.5 * (dagger(x) @ x + dagger(dagger(x) @ x))


def random_unitary(n: int, rng: RNGLike) -> np.ndarray:
    """Haar unitary via QR of a Ginibre matrix with the phase correction on R."""
    q, r = np.linalg.qr(ginibre(n, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_partial_isometry(n: int, rank: int, rng: RNGLike) -> np.ndarray:
    if not 0 <= rank <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {rank}")
    us, _, vs = svd(ginibre(n, rng))
    return us[:, :rank] @ dagger(vs[:, :rank])


def invertible(n: int, rng: RNGLike, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """``Q1 diag(sigma) Q2*`` with Haar unitaries and sigma log-uniform on ``[lo, hi]``.

    Keeps the condition number below ``hi/lo`` so negative powers of ``|A|``
    stay well inside double precision.
    """
    g = _gen(rng)
    sigma = np.exp(g.uniform(np.log(lo), np.log(hi), size=n))
    return (random_unitary(n, g) * sigma) @ dagger(random_unitary(n, g))


def log_uniform(rng: RNGLike, lo: float, hi: float) -> float:
    return float(np.exp(_gen(rng).uniform(np.log(lo), np.log(hi))))


def draw_params(rng: RNGLike, kind: str) -> float:
    """One parameter draw: ``t``, ``p_t0`` (in (0, 1]), ``p_t1`` (in [-2, 3]) or ``r`` (> 1)."""
    g = _gen(rng)
    if kind == "t":
        return log_uniform(g, 0.1, 10.0)
    if kind == "p_t0":
        return float(1.0 - g.uniform(0.0, 1.0))  # (0, 1]
    if kind == "p_t1":
        return float(g.uniform(-2.0, 3.0))
    if kind == "r":
        return 1.0 + log_uniform(g, 0.1, 10.0)
    raise ValueError(f"unknown parameter kind {kind!r}")


def random_operand(n: int, rng: RNGLike, kind: str) -> np.ndarray:
    """``kind`` is ``generic``, ``rank_deficient`` (random rank below n) or ``invertible``."""
    g = _gen(rng)
    if kind == "generic":
        return ginibre(n, g)
    if kind == "rank_deficient":
        return rank_deficient(n, int(g.integers(0, n)), g)
    if kind == "invertible":
        return invertible(n, g)
    raise ValueError(f"unknown operand kind {kind!r}")


def random_pair(n: int, rng: RNGLike, *, deficient: bool = False,
                invertible_only: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """A pair ``(A, B)``; with ``deficient`` at least one factor is rank-deficient."""
    g = _gen(rng)
    if invertible_only:
        return invertible(n, g), invertible(n, g)
    if not deficient:
        return ginibre(n, g), ginibre(n, g)
    which = int(g.integers(0, 3))  # A, B or both
    a = random_operand(n, g, "rank_deficient" if which in (0, 2) else "generic")
    b = random_operand(n, g, "rank_deficient" if which in (1, 2) else "generic")
    return a, b
