"""The invertibility-free bound on ``|(U - V)|A||^2`` and its equality case.

For ``A = U|A|``, ``B = V|B|`` and ``t > 0``::

    |(U-V)|A||^2 <= (t+1)|A-B|^2 + (1+1/t)(|A|-|B|)^2

with equality iff ``t(A-B) = V(|B|-|A|)`` and ``V*V = U*U``.  Equality
forces ``A = B`` when ``t >= 1``; for ``0 < t < 1`` it is characterized by
``A = B(I - 2/(1-t) W*W)`` and ``|A| = |B|(I + 2t/(1-t) W*W)`` where
``A - B = W|A - B|``.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .dw import CheckReport, check_pair, make_report
from .errors import EqualityNotAttained, HypothesisNotSatisfied, SupportMismatch, TheoremViolation
from .kernels import abs_op, fro, identity_like, polar, sq_abs
from .order import DEFAULT_POLICY, OrderVerdict, TolerancePolicy, loewner_leq, pair_scale


def polar_difference_bound(a, b, t: float, pol: TolerancePolicy = DEFAULT_POLICY) -> CheckReport:
    """Evaluate the bound; ``equality_residual`` is the max of both conditions."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    a, b = check_pair(a, b)
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    u, v = pa.isometry, pb.isometry
    lhs = sq_abs((u - v) @ pa.positive)
    rhs = (t + 1) * sq_abs(a - b) + (1 + 1 / t) * sq_abs(pa.positive - pb.positive)
    cond = fro(t * (a - b) - v @ (pb.positive - pa.positive))
    support = fro(pb.support() - pa.support())
    return make_report("polar_difference_bound", lhs, rhs, max(cond, support), pol,
                       pair_scale(a, b), condition_residual=cond, support_residual=support)


def conjugate_exponent_bound(a, b, q: float, pol: TolerancePolicy = DEFAULT_POLICY) -> CheckReport:
    """``|(U-V)|A||^2 <= q|A-B|^2 + q'(|A|-|B|)^2`` for ``1/q + 1/q' = 1``; this is ``t = q - 1``."""
    if not q > 1:
        raise ValueError(f"conjugate exponent must exceed 1, got {q}")
    rep = polar_difference_bound(a, b, q - 1.0, pol)
    return dataclasses.replace(rep, variant="conjugate_exponent_bound")


def _forward_residual(a, b, pb, pa, t):
    # t(A-B) - V(|B|-|A|), equivalently t(A-B) + V(|A|-|B|)
    return fro(t * (a - b) + pb.isometry @ (pa.positive - pb.positive))


@dataclass(frozen=True)
class DominanceVerdicts:
    difference: OrderVerdict   # t|A-B|^2 <= |A|^2 - |B|^2
    modulus: OrderVerdict      # |B| <= |A|
    support: OrderVerdict      # V*V <= U*U
    identity_residual: Optional[float]  # only when U*U == V*V
    identity_holds: Optional[bool]

    @property
    def all_hold(self) -> bool:
        ok = self.difference.holds and self.modulus.holds and self.support.holds
        return ok and self.identity_holds is not False


def dominance_consequences(a, b, t: float, pol: TolerancePolicy = DEFAULT_POLICY) -> DominanceVerdicts:
    """Consequences of ``t(A-B) + V(|A|-|B|) = 0``.

    ``t|A-B|^2 <= |A|^2 - |B|^2``, hence ``|B| <= |A|`` and ``V*V <= U*U``;
    if moreover ``U*U = V*V`` the first relation is an identity.
    """
    a, b = check_pair(a, b)
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    scale = pair_scale(a, b)
    hyp = _forward_residual(a, b, pb, pa, t)
    if hyp > pol.eps_eq * scale:
        raise HypothesisNotSatisfied(f"hypothesis residual {hyp:.3e} exceeds tolerance")
    lhs = t * sq_abs(a - b)
    rhs = sq_abs(a) - sq_abs(b)
    uu, vv = pa.support(), pb.support()
    ident = holds = None
    if fro(uu - vv) <= pol.eps_eq:
        ident = fro(lhs - rhs)
        holds = ident <= pol.eps_identity * scale
    return DominanceVerdicts(
        difference=loewner_leq(lhs, rhs, pol, scale),
        modulus=loewner_leq(pb.positive, pa.positive, pol, scale),
        support=loewner_leq(vv, uu, pol, scale),
        identity_residual=ident,
        identity_holds=holds,
    )


@dataclass(frozen=True)
class SplitEquivalence:
    forward_residual: float          # t(A-B) = V(|B|-|A|)
    backward_residuals: tuple[float, float]  # |A| = |B| + t|A-B|,  A-B = -V|A-B|
    forward_holds: bool
    backward_holds: bool

    @property
    def agrees(self) -> bool:
        return self.forward_holds == self.backward_holds


def _require_same_support(pa, pb, pol, scale):
    mismatch = fro(pa.support() - pb.support())
    if mismatch > pol.eps_eq * scale:
        raise SupportMismatch(f"||U*U - V*V||_F = {mismatch:.3e}")


def absolute_split_equivalence(a, b, t: float,
                               pol: TolerancePolicy = DEFAULT_POLICY) -> SplitEquivalence:
    """Under ``U*U = V*V``: ``t(A-B) = V(|B|-|A|)`` iff ``|A| = |B| + t|A-B|`` and ``A-B = -V|A-B|``."""
    a, b = check_pair(a, b)
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    scale = pair_scale(a, b)
    _require_same_support(pa, pb, pol, scale)
    fwd = _forward_residual(a, b, pb, pa, t)
    abs_c = abs_op(a - b)
    back = (fro(pa.positive - pb.positive - t * abs_c), fro(a - b + pb.isometry @ abs_c))
    bound = pol.eps_eq * scale
    return SplitEquivalence(fwd, back, fwd <= bound, max(back) <= bound)


@dataclass(frozen=True)
class IdentityCheck:
    residual: float
    holds: bool


def anticommutator_identity(a, b, t: float, pol: TolerancePolicy = DEFAULT_POLICY) -> IdentityCheck:
    """``|B||A-B| + |A-B||B| = (1-t)|A-B|^2`` on equality instances."""
    a, b = check_pair(a, b)
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    scale = pair_scale(a, b)
    _require_same_support(pa, pb, pol, scale)
    hyp = _forward_residual(a, b, pb, pa, t)
    if hyp > pol.eps_eq * scale:
        raise HypothesisNotSatisfied(f"hypothesis residual {hyp:.3e} exceeds tolerance")
    abs_c, abs_b = abs_op(a - b), pb.positive
    res = fro(abs_b @ abs_c + abs_c @ abs_b - (1 - t) * (abs_c @ abs_c))
    return IdentityCheck(res, res <= pol.eps_identity * scale)


def commutator_residual(a, b) -> float:
    """``|| |A-B||B| - |B||A-B| ||_F``."""
    a, b = check_pair(a, b)
    abs_c, abs_b = abs_op(a - b), abs_op(b)
    return fro(abs_c @ abs_b - abs_b @ abs_c)


@dataclass(frozen=True)
class EqualityClass:
    kind: str  # "not_equal_case" | "trivial_AB_equal" | "structured"
    structural_residuals: Optional[tuple[float, float]] = None
    holds: bool = True


def characterize_polar_equality(a, b, t: float, pol: TolerancePolicy = DEFAULT_POLICY,
                                strict: bool = True) -> EqualityClass:
    """Classify an equality instance of :func:`polar_difference_bound`.

    Raises :class:`EqualityNotAttained` if equality fails (or returns
    ``not_equal_case`` when ``strict`` is false) and
    :class:`TheoremViolation` for ``t >= 1`` with ``A != B``.
    """
    a, b = check_pair(a, b)
    rep = polar_difference_bound(a, b, t, pol)
    if not rep.equality_attained:
        if strict:
            raise EqualityNotAttained(f"||rhs - lhs||_F = {rep.gap_norm:.3e}")
        return EqualityClass("not_equal_case", holds=True)
    bound = pol.eps_eq * rep.scale
    if fro(a - b) <= bound:
        return EqualityClass("trivial_AB_equal")
    if t >= 1:
        raise TheoremViolation(f"equality with t = {t} >= 1 but ||A - B||_F = {fro(a - b):.3e}")
    w = polar(a - b, pol.rank_cutoff_factor)
    ww = w.support()
    eye = identity_like(a)
    res_a = fro(a - b @ (eye - (2 / (1 - t)) * ww))
    pa, pb = polar(a, pol.rank_cutoff_factor), polar(b, pol.rank_cutoff_factor)
    res_abs = fro(pa.positive - pb.positive @ (eye + (2 * t / (1 - t)) * ww))
    return EqualityClass("structured", (res_a, res_abs), max(res_a, res_abs) <= bound)
