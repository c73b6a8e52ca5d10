"""Bounds on differences of operators and their polar parts, from the generalized parallelogram law.

Each ``*_bound`` evaluator returns a :class:`CheckReport` holding both sides
of an operator inequality ``lhs <= rhs``, the Löwner verdict, and the
residual of the stated equality condition.  Notation in docstrings:
``|X| = (X*X)^{1/2}``, ``A = U|A|`` and ``B = V|B|`` are polar
decompositions, ``r > 1`` and ``s = r/(r-1)`` are conjugate exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import HypothesisNotSatisfied, MatrixError, SingularPower
from .kernels import abs_op, as_matrix, fro, frac_power, herm, polar, sq_abs
from .order import DEFAULT_POLICY, OrderVerdict, TolerancePolicy, loewner_leq, min_eig, pair_scale


@dataclass(frozen=True)
class DWParams:
    p: Optional[float] = None
    t: Optional[float] = None
    r: Optional[float] = None
    s: Optional[float] = None

    @classmethod
    def from_r(cls, r: float, p: Optional[float] = None) -> "DWParams":
        if not r > 1:
            raise ValueError(f"conjugate exponent r must exceed 1, got {r}")
        return cls(p=p, t=r - 1.0, r=r, s=r / (r - 1.0))

    @classmethod
    def from_t(cls, t: float, p: Optional[float] = None) -> "DWParams":
        if not t > 0:
            raise ValueError(f"t must be positive, got {t}")
        return cls(p=p, t=t, r=t + 1.0, s=1.0 + 1.0 / t)


@dataclass
class CheckReport:
    variant: str
    lhs: np.ndarray
    rhs: np.ndarray
    gap_min_eig: float
    holds: bool
    equality_residual: float
    equality_predicted: bool
    equality_attained: bool
    scale: float
    extra: dict = field(default_factory=dict)

    @property
    def gap_norm(self) -> float:
        return fro(self.rhs - self.lhs)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "lhs_spectrum": np.linalg.eigvalsh(self.lhs).tolist(),
            "rhs_spectrum": np.linalg.eigvalsh(self.rhs).tolist(),
            "gap_min_eig": self.gap_min_eig,
            "gap_norm": self.gap_norm,
            "holds": self.holds,
            "equality_residual": self.equality_residual,
            "equality_predicted": self.equality_predicted,
            "equality_attained": self.equality_attained,
            "scale": self.scale,
            "extra": dict(self.extra),
        }


def make_report(variant: str, lhs, rhs, equality_residual: float,
                pol: TolerancePolicy, scale: float, **extra) -> CheckReport:
    lhs, rhs = herm(lhs), herm(rhs)
    verdict = loewner_leq(lhs, rhs, pol, scale)
    return CheckReport(
        variant=variant, lhs=lhs, rhs=rhs,
        gap_min_eig=verdict.gap_min_eig, holds=verdict.holds,
        equality_residual=float(equality_residual),
        equality_predicted=equality_residual <= pol.eps_eq * scale,
        equality_attained=fro(rhs - lhs) <= pol.eps_eq * scale,
        scale=scale, extra=extra,
    )


def check_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise MatrixError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a, b


def _require_t(t: float) -> None:
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")


def gpl_residual(a, b, t: float) -> float:
    """Frobenius residual of ``|A-B|^2 + |tA+B|^2/t = (1+t)|A|^2 + (1+1/t)|B|^2``.

    An exact identity for every real ``t != 0``, so the result is pure roundoff.
    """
    if t == 0:
        raise ValueError("t must be nonzero")
    a, b = check_pair(a, b)
    lhs = sq_abs(a - b) + sq_abs(t * a + b) / t
    rhs = (1 + t) * sq_abs(a) + (1 + 1 / t) * sq_abs(b)
    return fro(lhs - rhs)


def difference_bound(a, b, t: float, pol: TolerancePolicy = DEFAULT_POLICY) -> CheckReport:
    """``|A-B|^2 <= (1+t)|A|^2 + (1+1/t)|B|^2``; equality iff ``tA + B = 0``."""
    _require_t(t)
    a, b = check_pair(a, b)
    lhs = sq_abs(a - b)
    rhs = (1 + t) * sq_abs(a) + (1 + 1 / t) * sq_abs(b)
    return make_report("difference_bound", lhs, rhs, fro(t * a + b), pol, pair_scale(a, b))


def polar_power_bound(a, b, p: float, t: float, pol: TolerancePolicy = DEFAULT_POLICY,
                      abstract_form: bool = False) -> CheckReport:
    """Bound for ``|(U|A|^p - V|B|^p)|A|^{1-p}|^2`` with ``0 < p <= 1``.

    The right side is ``(1+t)|A-B|^2 + (1+1/t)||B|^p|A|^{1-p} - |B||^2``.
    No invertibility is needed; equality iff
    ``t(A-B) + V(|B|^p|A|^{1-p} - |B|) = 0``.

    With ``abstract_form`` the variant whose middle term is
    ``||A|^{1-p}|B|^p - |B||^2`` is evaluated too and its Löwner gap stored in
    ``extra``; it is reported, never asserted.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    _require_t(t)
    a, b = check_pair(a, b)
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    a_rest = pa.power(1 - p)
    middle = pb.power(p) @ a_rest - pb.positive
    lhs = sq_abs((pa.isometry @ pa.power(p) - pb.isometry @ pb.power(p)) @ a_rest)
    base = (1 + t) * sq_abs(a - b)
    rhs = base + (1 + 1 / t) * sq_abs(middle)
    residual = fro(t * (a - b) + pb.isometry @ middle)
    extra = {}
    if abstract_form:
        alt = a_rest @ pb.power(p) - pb.positive
        extra["abstract_gap_min_eig"] = min_eig(herm(base + (1 + 1 / t) * sq_abs(alt)) - herm(lhs))
    return make_report("polar_power_bound", lhs, rhs, residual, pol, pair_scale(a, b), **extra)


def _invertible_polars(a, b, pol):
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    if not (pa.invertible and pb.invertible):
        raise SingularPower(
            f"|A| and |B| must be invertible (ranks {pa.support_rank}, {pb.support_rank} of {pa.n})")
    return pa, pb


def p_angular_scale(a, b, pa, pb, p: float) -> float:
    """Normalization for the p-angular family.

    These expressions are homogeneous of degree ``2p`` rather than 2, so the
    quadratic pair scale is multiplied by the squared spectral norm of the
    conjugating powers ``|A|^{p-1}``, ``|B|^{p-1}``.  Equals
    :func:`pair_scale` at ``p = 1``.
    """
    factor = 1.0
    for pf in (pa, pb):
        kept = pf.singular_values[pf.singular_values > 0]
        if kept.size:
            factor = max(factor, float(np.max(kept ** (p - 1))))
    return pair_scale(a, b) * factor ** 2


def p_angular_bound(a, b, p: float, r: float, pol: TolerancePolicy = DEFAULT_POLICY,
                    abstract_form: bool = False) -> CheckReport:
    """Bound on the squared operator p-angular distance for invertible ``|A|, |B|``.

    ``|A|A|^{p-1} - B|B|^{p-1}|^2
        <= |A|^{p-1} (r|A-B|^2 + s||B|^p|A|^{1-p} - |B||^2) |A|^{p-1}``

    with equality iff ``(r-1)(A-B)|A|^{p-1} = B(|A|^{p-1} - |B|^{p-1})``.
    """
    prm = DWParams.from_r(r, p)
    a, b = check_pair(a, b)
    pa, pb = _invertible_polars(a, b, pol)
    a_pow, b_pow = pa.power(p - 1), pb.power(p - 1)
    lhs = sq_abs(a @ a_pow - b @ b_pow)
    middle = pb.power(p) @ pa.power(1 - p) - pb.positive
    base = r * sq_abs(a - b)
    rhs = a_pow @ (base + prm.s * sq_abs(middle)) @ a_pow
    residual = fro((r - 1) * (a - b) @ a_pow - b @ (a_pow - b_pow))
    extra = {}
    if abstract_form:
        alt = pa.power(1 - p) @ pb.power(p) - pb.positive
        alt_rhs = herm(a_pow @ (base + prm.s * sq_abs(alt)) @ a_pow)
        extra["abstract_gap_min_eig"] = min_eig(alt_rhs - herm(lhs))
    return make_report("p_angular_bound", lhs, rhs, residual, pol,
                       p_angular_scale(a, b, pa, pb, p), **extra)


def angular_bound(a, b, r: float, pol: TolerancePolicy = DEFAULT_POLICY) -> CheckReport:
    """The ``p = 0`` case written with ``(|A| - |B|)^2`` as the middle term.

    ``|A|A|^{-1} - B|B|^{-1}|^2 <= |A|^{-1}(r|A-B|^2 + s(|A|-|B|)^2)|A|^{-1}``.
    ``extra["p_angular_agreement"]`` is the Frobenius distance between this
    right side and the one from :func:`p_angular_bound` at ``p = 0``.
    """
    prm = DWParams.from_r(r, 0.0)
    a, b = check_pair(a, b)
    pa, pb = _invertible_polars(a, b, pol)
    a_inv, b_inv = pa.power(-1), pb.power(-1)
    lhs = sq_abs(a @ a_inv - b @ b_inv)
    rhs = a_inv @ (r * sq_abs(a - b) + prm.s * sq_abs(pa.positive - pb.positive)) @ a_inv
    residual = fro((r - 1) * (a - b) @ a_inv - b @ (a_inv - b_inv))
    general = p_angular_bound(a, b, 0.0, r, pol)
    agreement = fro(herm(rhs) - general.rhs)
    return make_report("angular_bound", lhs, rhs, residual, pol,
                       p_angular_scale(a, b, pa, pb, 0.0), p_angular_agreement=agreement)


@dataclass(frozen=True)
class EquivalenceReport:
    residuals: tuple[float, float, float, float]
    all_hold: bool
    none_hold: bool
    scale: float

    @property
    def consistent(self) -> bool:
        return self.all_hold or self.none_hold


def _equality_terms(a, b, p, pol):
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    if p < 1 and not (pa.invertible and pb.invertible):
        raise SingularPower("|A| and |B| must be invertible when p < 1")
    a_pow, b_pow = pa.power(p - 1), pb.power(p - 1)
    return pa, pb, a_pow, b_pow


def p_angular_equality_conditions(a, b, p: float, r: float,
                                  pol: TolerancePolicy = DEFAULT_POLICY) -> EquivalenceReport:
    """Residuals of four algebraically equivalent forms of the equality condition.

    With ``X = (A-B)|A|^{p-1}`` and ``Y = B(|A|^{p-1} - |B|^{p-1})``:
    ``(r-1)X = Y``, ``(s-1)Y = X``, ``rX - sY = 0`` and
    ``A|A|^{p-1} - B|B|^{p-1} = sY``.
    """
    prm = DWParams.from_r(r, p)
    a, b = check_pair(a, b)
    pa, pb, a_pow, b_pow = _equality_terms(a, b, p, pol)
    x = (a - b) @ a_pow
    y = b @ (a_pow - b_pow)
    s = prm.s
    res = (
        fro((r - 1) * x - y),
        fro((s - 1) * y - x),
        fro(r * x - s * y),
        fro(a @ a_pow - b @ b_pow - s * y),
    )
    scale = p_angular_scale(a, b, pa, pb, p)
    bound = pol.eps_eq * scale
    return EquivalenceReport(res, all(v <= bound for v in res), all(v > bound for v in res), scale)


@dataclass(frozen=True)
class EqualityConsequences:
    identity_residual: float
    identity_holds: bool
    order: OrderVerdict
    absolute_residual: float
    absolute_holds: bool
    scale: float
    remark_residual: Optional[float] = None

    @property
    def all_hold(self) -> bool:
        return self.identity_holds and self.order.holds and self.absolute_holds


def p_angular_equality_consequences(a, b, p: float, r: float,
                                    pol: TolerancePolicy = DEFAULT_POLICY) -> EqualityConsequences:
    """Necessary consequences of the p-angular equality condition.

    Checks, with ``K = |A|^{1-p}|B|^{2p}|A|^{1-p}``:

    1. ``(r-1)|A-B|^2 = K/r + |A|^2/s - |B|^2`` (identity, ``eps_identity``),
    2. ``|B| <= (K/r + |A|^2/s)^{1/2}`` (Löwner),
    3. ``r|A-B| = s||B|^p|A|^{1-p} - |B||`` (``eps_eq``).

    At ``p = 0`` also reports the residual of ``|A| = |B| + (r/s)|A-B|``.
    Raises :class:`HypothesisNotSatisfied` when the equality condition fails.
    """
    prm = DWParams.from_r(r, p)
    a, b = check_pair(a, b)
    pa, pb, a_pow, b_pow = _equality_terms(a, b, p, pol)
    scale = p_angular_scale(a, b, pa, pb, p)
    hyp = fro((r - 1) * (a - b) @ a_pow - b @ (a_pow - b_pow))
    if hyp > pol.eps_eq * scale:
        raise HypothesisNotSatisfied(f"equality condition residual {hyp:.3e} exceeds tolerance")
    s = prm.s
    a_rest = pa.power(1 - p)
    k = herm(a_rest @ pb.power(2 * p) @ a_rest)
    diff_sq = sq_abs(a - b)
    bound_sq = k / r + sq_abs(a) / s
    identity_res = fro((r - 1) * diff_sq - (bound_sq - sq_abs(b)))
    order = loewner_leq(pb.positive, frac_power(bound_sq, 0.5, eps_psd=pol.eps_psd), pol, scale)
    abs_diff = abs_op(a - b)
    middle = pb.power(p) @ a_rest - pb.positive
    absolute_res = fro(r * abs_diff - s * abs_op(middle))
    remark = None
    if p == 0:
        remark = fro(pa.positive - pb.positive - (r / s) * abs_diff)
    return EqualityConsequences(
        identity_residual=identity_res,
        identity_holds=identity_res <= pol.eps_identity * scale,
        order=order,
        absolute_residual=absolute_res,
        absolute_holds=absolute_res <= pol.eps_eq * scale,
        scale=scale,
        remark_residual=remark,
    )
