"""Löwner order, PSD tests and the tolerance policy behind every verdict."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import MatrixError
from .kernels import as_matrix, fro, hermitian_eig


@dataclass(frozen=True)
class TolerancePolicy:
    eps_psd: float = 1e-9
    eps_eq: float = 1e-8
    eps_identity: float = 1e-10
    rank_cutoff_factor: float = 16.0

    def __post_init__(self):
        for name in ("eps_psd", "eps_eq", "eps_identity", "rank_cutoff_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.eps_identity > self.eps_eq:
            raise ValueError("eps_identity must not exceed eps_eq")

    def with_overrides(self, **kw) -> "TolerancePolicy":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    gap_min_eig: float
    scale: float


def pair_scale(*mats: np.ndarray) -> float:
    """``max(1, ||A||_F, ||B||_F, ...)**2``, the normalization for quadratic expressions."""
    return max([1.0] + [fro(m) for m in mats]) ** 2


def min_eig(h) -> float:
    return float(hermitian_eig(h).eigenvalues[0])


def loewner_leq(x, y, pol: TolerancePolicy = DEFAULT_POLICY,
                scale: float = 1.0) -> OrderVerdict:
    """Verdict on ``x <= y``, i.e. ``y - x`` PSD up to ``eps_psd * scale``."""
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise MatrixError(f"dimension mismatch {x.shape} vs {y.shape}")
    gap = min_eig(y - x)
    return OrderVerdict(gap >= -pol.eps_psd * scale, gap, scale)


def is_psd(h, pol: TolerancePolicy = DEFAULT_POLICY, scale: float = 1.0) -> bool:
    return min_eig(h) >= -pol.eps_psd * scale


def residual_norm(x) -> float:
    return fro(np.asarray(x))


def is_equal(x, y, pol: TolerancePolicy = DEFAULT_POLICY, scale: float = 1.0) -> bool:
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise MatrixError(f"shape mismatch {x.shape} vs {y.shape}")
    return residual_norm(x - y) <= pol.eps_eq * scale
