import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opineq import dw, oracle
from opineq.errors import HypothesisNotSatisfied, MatrixError, SingularPower
from opineq.kernels import fro, polar, sq_abs
from opineq.order import pair_scale
from opineq.sampler import draw_params, ginibre, invertible, random_pair, rank_deficient

from conftest import diag, dims, rng_for, seeds


def m(x):
    return np.array([[x]], dtype=np.complex128)


def test_gpl_examples():
    assert dw.gpl_residual(m(2), m(1), 1) == pytest.approx(0, abs=1e-14)
    assert dw.gpl_residual(np.zeros((2, 2)), np.zeros((2, 2)), -3) == 0
    assert dw.gpl_residual(m(1), m(1), 2) == pytest.approx(0, abs=1e-14)
    with pytest.raises(ValueError):
        dw.gpl_residual(m(1), m(1), 0)
    with pytest.raises(MatrixError):
        dw.gpl_residual(np.eye(2), np.eye(3), 1)


@given(seeds, dims, st.floats(0.1, 10), st.booleans())
def test_gpl_identity(seed, n, t, negate):
    a, b = random_pair(n, rng_for(seed))
    t = -t if negate else t
    assert dw.gpl_residual(a, b, t) <= 1e-10 * pair_scale(a, b)


def test_difference_bound_examples():
    rep = dw.difference_bound(m(1), m(-2), 2)
    assert rep.lhs[0, 0] == pytest.approx(9) and rep.rhs[0, 0] == pytest.approx(9)
    assert rep.equality_predicted and rep.equality_attained
    rep = dw.difference_bound(m(1), m(1), 1)
    assert rep.lhs[0, 0] == 0 and rep.rhs[0, 0] == pytest.approx(4)
    assert rep.equality_residual == pytest.approx(2) and not rep.equality_predicted
    rep = dw.difference_bound(np.zeros((2, 2)), np.zeros((2, 2)), 1)
    assert rep.equality_predicted and rep.equality_attained
    with pytest.raises(ValueError):
        dw.difference_bound(m(1), m(1), -1)


def test_polar_power_bound_examples():
    rep = dw.polar_power_bound(m(2), m(1), 0.5, 1)
    assert rep.lhs[0, 0] == pytest.approx((2 - math.sqrt(2)) ** 2)
    assert rep.rhs[0, 0] == pytest.approx(2 + 2 * (math.sqrt(2) - 1) ** 2)
    assert rep.holds and not rep.equality_attained and not rep.equality_predicted
    a = rank_deficient(3, 1, rng_for(3))
    rep = dw.polar_power_bound(a, a, 0.4, 2)
    assert fro(rep.lhs) < 1e-12 and fro(rep.rhs) < 1e-12
    assert rep.equality_predicted and rep.equality_attained
    with pytest.raises(ValueError):
        dw.polar_power_bound(m(1), m(1), 0, 1)


@given(seeds, dims, st.floats(0.1, 10))
def test_polar_power_bound_at_p_one(seed, n, t):
    # p = 1 leaves a zero middle term and lhs = |A-B|^2
    rng = rng_for(seed)
    a, b = rank_deficient(n, int(rng.integers(0, n)), rng), ginibre(n, rng)
    rep = dw.polar_power_bound(a, b, 1.0, t)
    diff = sq_abs(a - b)
    assert fro(rep.lhs - diff) <= 1e-12 * pair_scale(a, b)
    assert fro(rep.rhs - (1 + t) * diff) <= 1e-12 * pair_scale(a, b)


def test_p_angular_bound_examples():
    rep = dw.p_angular_bound(m(2), m(1), 0, 2)
    assert rep.lhs[0, 0] == pytest.approx(0, abs=1e-15) and rep.rhs[0, 0] == pytest.approx(1)
    assert rep.holds
    rep = dw.p_angular_bound(m(0.5), m(1), 2, 3)
    assert rep.lhs[0, 0] == pytest.approx(0.5625) and rep.rhs[0, 0] == pytest.approx(0.5625)
    assert rep.equality_predicted and rep.equality_attained
    a = invertible(3, rng_for(1))
    rep = dw.p_angular_bound(a, a, -1.3, 2.5)
    assert fro(rep.lhs) < 1e-12 and rep.equality_predicted and rep.equality_attained
    with pytest.raises(SingularPower):
        dw.p_angular_bound(diag(0, 1), np.eye(2), 0.5, 2)
    with pytest.raises(ValueError):
        dw.p_angular_bound(m(1), m(1), 0.5, 1)


def test_p_angular_scale_reduces_to_pair_scale():
    rng = rng_for(5)
    a, b = invertible(3, rng), invertible(3, rng)
    pa, pb = polar(a), polar(b)
    assert dw.p_angular_scale(a, b, pa, pb, 1.0) == pair_scale(a, b)
    assert dw.p_angular_scale(a, b, pa, pb, 0.0) >= pair_scale(a, b)


def test_angular_bound_examples():
    rep = dw.angular_bound(m(2), m(1), 2)
    assert rep.rhs[0, 0] == pytest.approx(1) and rep.lhs[0, 0] == pytest.approx(0, abs=1e-15)
    a = invertible(2, rng_for(2))
    assert dw.angular_bound(a, a, 3).equality_attained


@given(seeds, dims)
def test_angular_bound_agrees_with_p_zero(seed, n):
    rng = rng_for(seed)
    a, b = random_pair(n, rng, invertible_only=True)
    rep = dw.angular_bound(a, b, draw_params(rng, "r"))
    assert rep.extra["p_angular_agreement"] <= 1e-10 * rep.scale


@given(seeds, dims)
def test_inequalities_hold_on_random_pairs(seed, n):
    rng = rng_for(seed)
    a, b = random_pair(n, rng, deficient=n > 1 and seed % 2 == 0)
    t = draw_params(rng, "t")
    assert dw.difference_bound(a, b, t).holds
    assert dw.polar_power_bound(a, b, draw_params(rng, "p_t0"), t).holds
    a, b = random_pair(n, rng, invertible_only=True)
    assert dw.p_angular_bound(a, b, draw_params(rng, "p_t1"), draw_params(rng, "r")).holds


def test_abstract_form_is_reported_only():
    rng = rng_for(9)
    a, b = ginibre(3, rng), ginibre(3, rng)
    rep = dw.polar_power_bound(a, b, 0.5, 1.0, abstract_form=True)
    assert "abstract_gap_min_eig" in rep.extra
    assert "abstract_gap_min_eig" not in dw.polar_power_bound(a, b, 0.5, 1.0).extra


def test_equality_conditions_examples():
    a = invertible(2, rng_for(4))
    assert dw.p_angular_equality_conditions(a, a, 0.3, 2).all_hold
    assert dw.p_angular_equality_conditions(m(0.5), m(1), 2, 3).all_hold
    rep = dw.p_angular_equality_conditions(m(2), m(1), 0, 2)
    assert rep.none_hold and rep.consistent


def test_equality_consequences_examples():
    con = dw.p_angular_equality_consequences(m(0.5), m(1), 2, 3)
    assert con.all_hold and con.remark_residual is None
    assert con.absolute_residual == pytest.approx(0, abs=1e-14)
    a = invertible(3, rng_for(8))
    con = dw.p_angular_equality_consequences(a, a, 0.7, 4)
    assert con.all_hold
    with pytest.raises(HypothesisNotSatisfied):
        dw.p_angular_equality_consequences(m(2), m(1), 0, 2)


def test_remark_at_p_zero():
    # scalar p = 0 witness with opposite phase: a = -r b / (2 - r)
    r = 1.5
    con = dw.p_angular_equality_consequences(m(-3.0), m(1.0), 0, r)
    assert con.all_hold
    assert con.remark_residual == pytest.approx(0, abs=1e-12)


def test_report_to_dict():
    d = dw.difference_bound(m(1), m(-2), 2).to_dict()
    assert d["variant"] == "difference_bound"
    assert d["lhs_spectrum"] == pytest.approx([9]) and d["holds"] is True


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.floats(0.1, 10), st.floats(-2, 3), st.floats(1.1, 11))
def test_scalar_evaluators_match_oracle(a, b, t, p, r):
    A, B = m(a), m(b)
    rep = dw.difference_bound(A, B, t)
    o = oracle.difference(a, b, t)
    tol = 1e-12 * rep.scale
    assert abs(rep.lhs[0, 0].real - o.lhs) <= tol and abs(rep.rhs[0, 0].real - o.rhs) <= tol
    if abs(a) > 0.1:
        rep = dw.p_angular_bound(A, B, p, r)
        o = oracle.p_angular(a, b, p, r)
        tol = 1e-12 * rep.scale
        assert abs(rep.lhs[0, 0].real - o.lhs) <= tol
        assert abs(rep.rhs[0, 0].real - o.rhs) <= tol
        assert abs(rep.equality_residual - o.equality_residual) <= tol
