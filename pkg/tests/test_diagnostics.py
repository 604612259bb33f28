import numpy as np
import pytest

from vplab.density import DensitySeries
from vplab.diagnostics import (decay_fit, derivative_order, energy,
                               functional_sample, gevrey_norm,
                               pointwise_sup_check, state_difference,
                               xi_spectral_derivative, znorm)
from vplab.errors import VplabError
from vplab.kinetics import FourierGrid, GlideState, cosine_mode_glide
from vplab.weights import MollifierLevel, WeightParams

PARAMS = WeightParams(lambda0=0.9, lambda1=0.72)
PARAMS_UP = WeightParams(lambda0=0.9, lambda1=0.72, direction="increasing")


def _zero_state(grid, t=0.0):
    return GlideState(grid, t, np.zeros((grid.n_k, grid.n_xi), dtype=complex))


def _impulse_state(grid, k0, j, c):
    ghat = np.zeros((grid.n_k, grid.n_xi), dtype=complex)
    ghat[grid.K + k0, j] = c
    return GlideState(grid, 0.0, ghat)


def test_derivative_order_default():
    assert derivative_order(1) == 1
    assert derivative_order(2) == 2
    assert derivative_order(3) == 2


def test_spectral_derivative_gaussian(small_grid):
    xi = small_grid.xi_grid
    rows = np.exp(-xi**2)
    d1 = xi_spectral_derivative(rows, 1, small_grid.xi_max)
    assert np.max(np.abs(d1 - (-2.0 * xi) * rows)) < 1e-9
    d2 = xi_spectral_derivative(rows, 2, small_grid.xi_max)
    assert np.max(np.abs(d2 - (4.0 * xi**2 - 2.0) * rows)) < 1e-8


def test_gevrey_norm_zero_and_impulse(small_grid):
    assert gevrey_norm(_zero_state(small_grid), 0.5) == 0.0
    j = 3 * small_grid.N_xi // 4
    c = 0.7 - 0.2j
    st = _impulse_state(small_grid, 2, j, c)
    xi0 = small_grid.xi_grid[j]
    bracket = np.sqrt(1.0 + 4.0 + xi0**2)
    expected = abs(c) * np.exp(0.5 * bracket ** (1 / 3)) * np.sqrt(small_grid.dxi)
    assert gevrey_norm(st, 0.5, n=0) == pytest.approx(expected, rel=1e-12)


def test_gevrey_norm_gaussian_direct_sum(small_grid):
    st = cosine_mode_glide(small_grid, eps=1e-2)
    lam, s_exp = 0.4, 1.0 / 3.0
    # independent direct summation oracle (a = 0 and a = 1 layers)
    total = 0.0
    for a in (0, 1):
        acc = 0.0
        for i, k in enumerate(small_grid.k_values):
            row = xi_spectral_derivative(st.ghat[i], a, small_grid.xi_max)
            for j, xi in enumerate(small_grid.xi_grid):
                w = np.exp(lam * (1 + k * k + xi * xi) ** (s_exp / 2.0))
                acc += abs(row[j]) ** 2 * w**2 * small_grid.dxi
        total += np.sqrt(acc)
    assert gevrey_norm(st, lam, s_exp, n=1) == pytest.approx(total, rel=1e-10)


def test_energy_zero_and_impulse(small_grid):
    assert energy(_zero_state(small_grid), 0, PARAMS) == 0.0
    j = small_grid.N_xi // 4
    c = 0.5 + 0.1j
    st = _impulse_state(small_grid, 1, j, c)
    st.t = 0.7
    xi0 = small_grid.xi_grid[j]
    from vplab.weights import weight
    a_val = weight(PARAMS, 0.7, 1.0, xi0)
    expected = a_val**2 * abs(c) ** 2 * small_grid.dxi
    assert energy(st, 0, PARAMS, n_derivs=0) == pytest.approx(expected, rel=1e-12)


def test_energy_mollifier_ordering(small_grid):
    st = cosine_mode_glide(small_grid, eps=1e-2)
    st.t = 1.0
    full = energy(st, 0, PARAMS)
    moll = energy(st, 0, PARAMS, m=MollifierLevel(4))
    bracket_max = np.sqrt(1.0 + small_grid.K**2 + small_grid.xi_max**2)
    assert moll <= full
    assert moll >= full * (1.0 + 2.0**-4 * bracket_max) ** -8


def test_energy_homogeneity_and_p_ordering(small_grid):
    st = cosine_mode_glide(small_grid, eps=1e-2)
    st.t = 0.5
    e0 = energy(st, 0, PARAMS)
    scaled = st.copy()
    scaled.ghat = 3.0 * scaled.ghat
    assert energy(scaled, 0, PARAMS) == pytest.approx(9.0 * e0, rel=1e-12)
    assert energy(st, 2, PARAMS) <= e0
    # monotone in lambda1
    bigger = WeightParams(lambda0=0.9, lambda1=0.81)
    assert energy(st, 0, bigger) >= e0


def test_energy_time_monotonicity(small_grid):
    st = cosine_mode_glide(small_grid, eps=1e-2)
    vals_down, vals_up = [], []
    for t in (0.0, 1.0, 4.0):
        frozen = st.copy()
        frozen.t = t
        vals_down.append(energy(frozen, 0, PARAMS))
        vals_up.append(energy(frozen, 0, PARAMS_UP))
    assert vals_down[0] >= vals_down[1] >= vals_down[2]
    assert vals_up[0] <= vals_up[1] <= vals_up[2]


def test_znorm_zero_and_single_mode(small_grid):
    assert znorm(_zero_state(small_grid), 0, PARAMS) == 0.0
    j0 = small_grid.N_xi // 2  # xi = 0 node, read at t = 0
    st = _impulse_state(small_grid, 2, j0, 0.3 + 0.4j)
    from vplab.weights import weight
    expected = weight(PARAMS, 0.0, 2.0, 0.0) * 0.5 * 2.0 ** (-0.5)
    assert znorm(st, 0, PARAMS) == pytest.approx(expected, rel=1e-12)
    # homogeneity
    st2 = st.copy()
    st2.ghat = 5.0 * st2.ghat
    assert znorm(st2, 0, PARAMS) == pytest.approx(
        5.0 * znorm(st, 0, PARAMS), rel=1e-12)


def test_znorm_free_streaming_decay(small_grid):
    # rho(t, +-1) = e^{-t^2} under free streaming beats the weight growth
    st = cosine_mode_glide(small_grid, eps=1.0 / np.pi, v_scale=np.sqrt(2.0))
    vals = []
    for t in (0.0, 1.0, 2.0):
        frozen = st.copy()
        frozen.t = t
        vals.append(znorm(frozen, 0, PARAMS))
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-1 * vals[0]


def test_pointwise_sup_zero_and_impulse(small_grid):
    rep = pointwise_sup_check(_zero_state(small_grid), 0, PARAMS)
    assert rep["worst_ratio"] == 0.0
    st = _impulse_state(small_grid, 1, small_grid.N_xi // 4, 1.0)
    rep = pointwise_sup_check(st, 0, PARAMS, n_derivs=0)
    assert rep["worst_ratio"] == pytest.approx(1.0 / small_grid.dxi, rel=1e-10)


def test_pointwise_sup_stable_under_refinement(maxwellian):
    ratios = []
    for n_xi in (64, 128):
        grid = FourierGrid(d=1, K=4, xi_max=8.0, N_xi=n_xi)
        st = cosine_mode_glide(grid, eps=1e-2)
        ratios.append(pointwise_sup_check(st, 0, PARAMS)["C0_fit"])
    assert abs(ratios[0] - ratios[1]) < 0.15 * ratios[0]


def test_functional_sample_composite(small_grid):
    st = cosine_mode_glide(small_grid, eps=1e-2)
    st.t = 1.0
    smp = functional_sample(st, PARAMS)
    bracket = np.sqrt(2.0) ** 6  # <1>^{6d} with d = 1
    expected = smp.energy_p[0] + (smp.znorm_p[0] * bracket) ** 2
    assert smp.bootstrap0 == pytest.approx(expected, rel=1e-12)
    assert smp.direction == "decreasing"


def test_state_difference_grid_mismatch(small_grid):
    other = FourierGrid(d=1, K=2, xi_max=8.0, N_xi=64)
    a = _zero_state(small_grid)
    b = _zero_state(other)
    with pytest.raises(VplabError):
        state_difference(a, b)


def _series_from_callable(fn, t):
    vals = np.array([fn(tt) for tt in t], dtype=complex)
    return DensitySeries(t_grid=t, k_list=np.array([1]), rho_hat=vals[:, None])


def test_decay_fit_exponential_passes():
    t = np.linspace(2.0, 16.0, 400)
    series = _series_from_callable(lambda tt: np.exp(-tt), t)
    rep = decay_fit(series, lambda0=0.9)
    assert rep["passes"]
    assert rep["c_fit"] > 0.9 * 0.9 / 4.0


def test_decay_fit_constant_fails():
    t = np.linspace(2.0, 16.0, 400)
    series = _series_from_callable(lambda tt: 1.0, t)
    rep = decay_fit(series, lambda0=0.9)
    assert not rep["passes"]
    assert abs(rep["c_fit"]) < 1e-10


def test_decay_fit_window_validation():
    t = np.linspace(2.0, 10.0, 100)  # t_hi < 8 t_lo
    series = _series_from_callable(lambda tt: np.exp(-tt), t)
    with pytest.raises(VplabError):
        decay_fit(series, lambda0=0.9)
