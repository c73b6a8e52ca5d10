"""Dense complex matrix kernels.

Matrices are plain ``complex128`` numpy arrays. Every routine here is a pure
function of its inputs; nothing is mutated in place.

The spectral work is delegated to LAPACK through ``numpy.linalg`` (``eigh``
and ``svd``); this module adds the conventions the inequality checks depend
on: symmetrization, an explicit numerical-rank cutoff, partial isometries
built from the retained singular pairs, and spectral powers with
``0**alpha == 0`` for ``alpha > 0`` and ``P**0 == I``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MatrixError, NotPSD, SingularPower

EPS = float(np.finfo(np.float64).eps)

#: relative asymmetry above which a "Hermitian" input is rejected
ASYMMETRY_LIMIT = 1e-8

#: default multiplier in the rank cutoff ``max(m, n) * sigma_max * eps * factor``
RANK_CUTOFF_FACTOR = 16.0


def as_matrix(x, *, square: bool = True) -> np.ndarray:
    """Validate ``x`` and return it as a 2-D complex128 array (a copy)."""
    a = np.array(x, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise MatrixError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MatrixError("matrix has non-finite entries")
    return a


def dagger(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def herm(x: np.ndarray) -> np.ndarray:
    """Hermitian part ``(X + X*) / 2``, no checks."""
    return 0.5 * (x + dagger(x))


def sq_abs(x: np.ndarray) -> np.ndarray:
    """``|X|^2 = X* X``, symmetrized so the result is exactly Hermitian."""
    return herm(dagger(x) @ x)


def fro(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))


def identity_like(x: np.ndarray) -> np.ndarray:
    return np.eye(x.shape[0], dtype=np.complex128)


def rank_cutoff(sigma_max: float, shape: tuple[int, int],
                factor: float = RANK_CUTOFF_FACTOR) -> float:
    return max(shape) * sigma_max * EPS * factor


def hermitian_part(h) -> np.ndarray:
    """Symmetrize ``h``, rejecting asymmetry beyond ``ASYMMETRY_LIMIT`` relative."""
    h = as_matrix(h)
    skew = fro(h - dagger(h))
    if skew > ASYMMETRY_LIMIT * max(fro(h), np.finfo(float).tiny):
        raise MatrixError(f"matrix is not Hermitian (asymmetry {skew:.3e})")
    return herm(h)


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # columns orthonormal


def hermitian_eig(h) -> HermitianEig:
    w, v = np.linalg.eigh(hermitian_part(h))
    return HermitianEig(w, v)


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(Us, sigma, Vs)`` with ``a = Us @ diag(sigma) @ Vs^*``, sigma descending."""
    a = as_matrix(a, square=False)
    us, sigma, vh = np.linalg.svd(a)
    return us, sigma, dagger(vh)


def abs_op(a) -> np.ndarray:
    """Operator absolute value ``|A| = (A* A)^{1/2}`` computed from the SVD."""
    _, sigma, vs = svd(as_matrix(a))
    return herm((vs * sigma) @ dagger(vs))


@dataclass(frozen=True)
class PolarForm:
    """``A = isometry @ positive`` with ``isometry`` a partial isometry.

    ``singular_values`` and ``right_vectors`` are the SVD data behind
    ``positive``; singular values at or below the rank cutoff are stored as
    exact zeros so that every power of ``|A|`` shares one support.
    """

    isometry: np.ndarray
    positive: np.ndarray
    support_rank: int
    singular_values: np.ndarray
    right_vectors: np.ndarray

    @property
    def n(self) -> int:
        return self.positive.shape[0]

    @property
    def invertible(self) -> bool:
        return self.support_rank == self.n

    def support(self) -> np.ndarray:
        """Support projection ``U* U``."""
        return sq_abs(self.isometry)

    def power(self, alpha: float) -> np.ndarray:
        """``|A|**alpha`` on the retained spectrum; ``alpha == 0`` gives ``I``."""
        if alpha == 0:
            return np.eye(self.n, dtype=np.complex128)
        if alpha < 0 and not self.invertible:
            raise SingularPower(
                f"|A|^{alpha:g} needs invertible |A| (rank {self.support_rank} < {self.n})")
        s = self.singular_values
        mapped = np.zeros_like(s)
        keep = s > 0
        mapped[keep] = s[keep] ** alpha
        vs = self.right_vectors
        return herm((vs * mapped) @ dagger(vs))


def polar(a, rank_cutoff_factor: float = RANK_CUTOFF_FACTOR) -> PolarForm:
    a = as_matrix(a)
    us, sigma, vs = svd(a)
    tau = rank_cutoff(sigma[0], a.shape, rank_cutoff_factor)
    keep = sigma > tau
    kept = np.where(keep, sigma, 0.0)
    iso = us[:, keep] @ dagger(vs[:, keep])
    pos = herm((vs * kept) @ dagger(vs))
    return PolarForm(iso, pos, int(keep.sum()), kept, vs)


def frac_power(p, alpha: float, *, eps_psd: float = 1e-9,
               rank_cutoff_factor: float = RANK_CUTOFF_FACTOR) -> np.ndarray:
    """Spectral power of a Hermitian PSD matrix.

    Eigenvalues at or below the rank cutoff count as zero; slightly negative
    eigenvalues (down to ``-eps_psd * max(1, |lambda|_max)``) are clamped.
    """
    w, v = hermitian_eig(p)
    scale = max(1.0, float(np.max(np.abs(w))))
    if w[0] < -eps_psd * scale:
        raise NotPSD(f"matrix has eigenvalue {w[0]:.3e}")
    if alpha == 0:
        return np.eye(len(w), dtype=np.complex128)
    w = np.clip(w, 0.0, None)
    tau = rank_cutoff(w[-1], (len(w), len(w)), rank_cutoff_factor)
    alive = w > tau
    if alpha < 0 and not alive.all():
        raise SingularPower(f"P^{alpha:g} of singular P (min eigenvalue {w[0]:.3e})")
    mapped = np.zeros_like(w)
    mapped[alive] = w[alive] ** alpha
    return herm((v * mapped) @ dagger(v))


def p_angular_distance(a, b, p: float,
                       rank_cutoff_factor: float = RANK_CUTOFF_FACTOR) -> np.ndarray:
    """Operator p-angular distance ``| A|A|^{p-1} - B|B|^{p-1} |``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise MatrixError(f"dimension mismatch {a.shape} vs {b.shape}")
    pa, pb = polar(a, rank_cutoff_factor), polar(b, rank_cutoff_factor)
    return abs_op(a @ pa.power(p - 1) - b @ pb.power(p - 1))
