import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vplab.errors import VplabError
from vplab.weights import (MollifierLevel, NO_MOLLIFIER, WeightParams,
                           check_submultiplicativity, commutator_constant,
                           exponent_time_difference, lambda_exponent,
                           log_weight, weight)

P = WeightParams(lambda0=0.2, lambda1=0.18)
P_UP = WeightParams(lambda0=0.2, lambda1=0.18, direction="increasing")


def test_params_validation():
    with pytest.raises(VplabError):
        WeightParams(lambda0=0.2, lambda1=0.05)           # below 0.5 lambda0
    with pytest.raises(VplabError):
        WeightParams(lambda0=0.2, lambda1=0.19)           # above 0.9 lambda0
    with pytest.raises(VplabError):
        WeightParams(lambda0=0.2, lambda1=0.18, direction="sideways")
    assert P.delta == 0.2 / 200.0


def test_exponent_at_origin():
    # both delta terms equal delta at t = r = 0
    d = P.delta
    assert lambda_exponent(P, 0.0, 0.0) == pytest.approx(0.18 + 2 * d, abs=1e-15)
    assert lambda_exponent(P_UP, 0.0, 0.0) == pytest.approx(0.18 - 2 * d, abs=1e-15)


def test_exponent_large_time_limit():
    # both delta terms vanish as t -> infinity at fixed r
    target = 0.18 * 65.0 ** (1.0 / 6.0)
    val = lambda_exponent(P, 1e6, 8.0)
    assert abs(val - target) < 5e-3
    assert val > target  # decreasing family approaches from above
    val_up = lambda_exponent(P_UP, 1e6, 8.0)
    assert abs(val_up - target) < 5e-3 and val_up < target


@given(t=st.floats(0.0, 1e5), r=st.floats(0.0, 200.0))
@settings(max_examples=200, deadline=None)
def test_exponent_envelope_bounds(t, r):
    bracket_cube = (1.0 + r * r) ** (1.0 / 6.0)
    lo = (P.lambda1 - 2 * P.delta) * bracket_cube
    hi = (P.lambda1 + 2 * P.delta) * bracket_cube
    for params in (P, P_UP):
        val = lambda_exponent(params, t, r)
        assert lo - 1e-12 <= val <= hi + 1e-12


@given(t1=st.floats(0.0, 1e4), t2=st.floats(0.0, 1e4), r=st.floats(0.0, 100.0))
@settings(max_examples=100, deadline=None)
def test_monotone_in_time(t1, t2, r):
    a, b = sorted((t1, t2))
    assert lambda_exponent(P, a, r) >= lambda_exponent(P, b, r) - 1e-14
    assert lambda_exponent(P_UP, a, r) <= lambda_exponent(P_UP, b, r) + 1e-14


def test_radial_slope_window():
    # finite-difference d/dr lambda within the proven envelope
    rng = np.random.default_rng(7)
    for _ in range(200):
        t = 10.0 ** rng.uniform(-2, 4)
        r = rng.uniform(0.05, 80.0)
        h = 1e-5 * max(r, 1.0)
        for params in (P, P_UP):
            slope = (lambda_exponent(params, t, r + h)
                     - lambda_exponent(params, t, r - h)) / (2 * h)
            env = r * (1.0 + r * r) ** (-5.0 / 6.0)
            lo = (params.lambda1 / 3.0 - params.delta) * env
            hi = (params.lambda1 / 3.0 + params.delta) * env
            tol = 1e-6 * max(abs(lo), abs(hi), 1e-12)
            assert lo - tol <= slope <= hi + tol


def test_weight_values():
    d = P.delta
    assert weight(P, 0.0, 0.0, 0.0) == pytest.approx(np.exp(0.18 + 2 * d), rel=1e-14)
    # decreasing in t at fixed frequency
    assert weight(P, 0.5, 1.0, 2.0) > weight(P, 3.0, 1.0, 2.0)
    assert weight(P_UP, 0.5, 1.0, 2.0) < weight(P_UP, 3.0, 1.0, 2.0)


def test_mollifier_factor_exact():
    m = MollifierLevel(4)
    # bracket <k, xi> = 16 at k = sqrt(16^2 - 1 - xi^2) ... pick xi = 0
    k = np.sqrt(16.0**2 - 1.0)
    ratio = weight(P, 1.0, k, 0.0, m) / weight(P, 1.0, k, 0.0, NO_MOLLIFIER)
    assert ratio == pytest.approx(2.0**-4, rel=1e-13)
    with pytest.raises(VplabError):
        MollifierLevel(3)


def test_mollified_ratio_everywhere():
    rng = np.random.default_rng(3)
    m = MollifierLevel(6)
    for _ in range(50):
        t, k, xi = rng.uniform(0, 10), rng.uniform(-30, 30), rng.uniform(-50, 50)
        bracket = np.sqrt(1 + k * k + xi * xi)
        expected = (1 + 2.0**-6 * bracket) ** -4
        got = weight(P, t, k, xi, m) / weight(P, t, k, xi)
        assert got == pytest.approx(expected, rel=1e-12)


def test_time_difference_closed_form():
    d = P.delta
    # at r = 0 both terms integrate to delta (1 - 2^{-delta})
    expected = 2 * d * (1.0 - 2.0 ** (-d))
    got = exponent_time_difference(P, 0.0, 1.0, 0.0)
    direct = lambda_exponent(P, 0.0, 0.0) - lambda_exponent(P, 1.0, 0.0)
    assert got == pytest.approx(expected, abs=1e-15)
    assert got == pytest.approx(direct, abs=1e-12)


@given(a=st.floats(0.0, 50.0), span=st.floats(0.0, 50.0), r=st.floats(0.0, 60.0))
@settings(max_examples=150, deadline=None)
def test_time_difference_identities(a, span, r):
    b = a + span
    closed = exponent_time_difference(P, a, b, r)
    direct = lambda_exponent(P, a, r) - lambda_exponent(P, b, r)
    mirrored = lambda_exponent(P_UP, b, r) - lambda_exponent(P_UP, a, r)
    assert closed == pytest.approx(direct, abs=1e-12)
    assert closed == pytest.approx(mirrored, abs=1e-12)


def test_time_difference_order_check():
    with pytest.raises(VplabError):
        exponent_time_difference(P, 2.0, 1.0, 0.0)


def test_submultiplicativity_degenerate_pair():
    # k' = xi' = 0 reduces to exp(lambda1/4) <= A(t, 0, 0)
    for t in (0.0, 1.0, 100.0):
        lhs = np.exp(P.lambda1 / 4.0)
        assert lhs <= weight(P, t, 0.0, 0.0)


def test_submultiplicativity_seeded_samples():
    report = check_submultiplicativity(P, 2000, seed=11)
    assert report["passes"]
    assert report["worst_ratio"] <= 1.0
    report_up = check_submultiplicativity(P_UP, 2000, seed=11)
    assert report_up["passes"]


def test_commutator_constant_reported():
    rep = commutator_constant(P, 2000, seed=5)
    assert np.isfinite(rep["C_fit"]) and rep["C_fit"] > 0.0


def test_log_weight_no_overflow():
    # exponent arithmetic stays finite even where exp would overflow
    val = log_weight(P, 0.0, 1e11, 1e11)
    assert np.isfinite(val)
    assert val > 700  # the direct weight would overflow
