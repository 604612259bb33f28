import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vplab.equilibria import (EquilibriumSpec, decay_cutoff, fourier_value,
                              grad_fourier_value, radial_value,
                              ray_derivative_at_zero, velocity_density,
                              verify_m01)
from vplab.errors import VplabError


def test_normalization_at_zero(poisson, maxwellian, vacuum):
    assert fourier_value(maxwellian, 0.0) == 1.0
    assert fourier_value(poisson, 0.0) == 1.0
    assert fourier_value(vacuum, 0.0) == 0.0


def test_poisson_reference_value(poisson):
    assert fourier_value(poisson, 1.0) == pytest.approx(np.exp(-1.0), rel=1e-14)
    assert fourier_value(poisson, 1.0) == pytest.approx(0.367879441, rel=1e-9)


def test_vacuum_everywhere(vacuum):
    xi = np.linspace(-5, 5, 11)
    assert np.all(fourier_value(vacuum, xi) == 0.0)
    assert np.all(grad_fourier_value(vacuum, xi) == 0.0)


def test_gradient_poisson_closed_form(poisson):
    # d/dxi e^{-|xi|} = -e^{-2} at xi = 2, frozen independently
    assert grad_fourier_value(poisson, 2.0) == pytest.approx(-0.1353352832366127, rel=1e-12)
    assert grad_fourier_value(poisson, -2.0) == pytest.approx(+0.1353352832366127, rel=1e-12)


def test_gradient_zero_conventions(poisson, maxwellian):
    assert grad_fourier_value(maxwellian, 0.0) == 0.0
    assert grad_fourier_value(poisson, 0.0) == 0.0  # kink convention


@pytest.mark.parametrize("kind,sigma", [("maxwellian", 1.0), ("maxwellian", 0.7),
                                        ("poisson", 1.0)])
def test_gradient_matches_finite_differences(kind, sigma):
    eq = EquilibriumSpec(kind, dim=1, lambda0=0.9, theta=0.2, sigma=sigma)
    h = 1e-4
    for xi in (0.35, 1.2, 2.8, -1.7):
        fd = (fourier_value(eq, xi + h) - fourier_value(eq, xi - h)) / (2 * h)
        assert grad_fourier_value(eq, xi) == pytest.approx(fd, rel=1e-6)


@given(xi=st.floats(-20.0, 20.0, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_conjugation_symmetry(xi):
    for kind in ("maxwellian", "poisson", "vacuum"):
        eq = EquilibriumSpec(kind, dim=1)
        assert fourier_value(eq, -xi) == pytest.approx(
            np.conj(fourier_value(eq, xi)), abs=1e-15)


def test_verify_m01_vacuum(vacuum):
    rep = verify_m01(vacuum, 10.0, 101)
    assert rep["sup_value"] == 0.0
    assert rep["passes"]


def test_verify_m01_poisson_grid_oracle():
    # dense independent scan of e^{0.9 <xi>^{1/3}} e^{-xi} (1 + xi)
    eq = EquilibriumSpec("poisson", dim=1, lambda0=0.9, theta=0.4)
    xi = np.linspace(0.0, 40.0, 400_001)
    oracle = np.max(np.exp(0.9 * (1 + xi**2) ** (1 / 6)) * np.exp(-xi) * (1 + xi))
    rep = verify_m01(eq, 40.0, 20_001)
    assert rep["sup_value"] == pytest.approx(oracle, rel=1e-6)
    # the profile is maximized at xi = 0 where the value is e^{0.9}
    assert rep["sup_value"] == pytest.approx(np.exp(0.9), rel=1e-6)
    assert rep["worst_xi"] == pytest.approx(0.0, abs=1e-2)
    assert rep["passes"]  # 1/theta = 2.5 > e^{0.9} ~ 2.46


def test_verify_m01_maxwellian_grid_oracle():
    # quantity: e^{lam <xi>^{1/3}} (|m| + |xi||m'|) = e^{...} e^{-xi^2/2}(1 + xi^2)
    eq = EquilibriumSpec("maxwellian", dim=1, lambda0=0.99, theta=0.25)
    xi = np.linspace(0.0, 30.0, 300_001)
    vals = np.exp(0.99 * (1 + xi**2) ** (1 / 6)) * np.exp(-xi**2 / 2) * (1 + xi**2)
    oracle = np.max(vals)
    rep = verify_m01(eq, 30.0, 30_001)
    assert rep["sup_value"] == pytest.approx(oracle, rel=1e-5)
    assert rep["passes"]


def test_verify_m01_monotone_in_lambda0():
    sups = []
    for lam0 in (0.5, 0.7, 0.9):
        eq = EquilibriumSpec("poisson", dim=1, lambda0=lam0, theta=0.4)
        sups.append(verify_m01(eq, 20.0, 2001)["sup_value"])
    assert sups[0] <= sups[1] <= sups[2]


def test_tabulated_round_trip_and_hull():
    r = np.linspace(0.0, 6.0, 301)
    eq = EquilibriumSpec("tabulated", dim=1, lambda0=0.5, theta=0.3,
                         table=(r, np.exp(-r)))
    assert fourier_value(eq, 1.0) == pytest.approx(np.exp(-1.0), abs=1e-8)
    assert grad_fourier_value(eq, 2.0) == pytest.approx(-np.exp(-2.0), abs=1e-6)
    with pytest.raises(VplabError):
        fourier_value(eq, 7.0)


def test_tabulated_validation():
    with pytest.raises(VplabError):
        EquilibriumSpec("tabulated", table=(np.array([0.0, 1.0, 0.5]),
                                            np.array([1.0, 0.5, 0.2])))
    with pytest.raises(VplabError):
        EquilibriumSpec("tabulated", table=(np.array([0.0, 1.0]),
                                            np.array([1.0, np.inf])))


def test_ray_derivative_at_zero(poisson, maxwellian, vacuum):
    assert ray_derivative_at_zero(poisson) == pytest.approx(-1.0, abs=1e-8)
    assert ray_derivative_at_zero(maxwellian) == pytest.approx(0.0, abs=1e-8)
    assert ray_derivative_at_zero(vacuum) == 0.0


def test_decay_cutoff_bounds(poisson, maxwellian):
    s = decay_cutoff(poisson, 1.0)
    assert s * np.exp(-s) < 1e-16
    s2 = decay_cutoff(maxwellian, 2.0)
    assert s2 * radial_value(maxwellian, 2.0 * s2) < 1e-16


def test_velocity_density_normalization(poisson, maxwellian):
    v = np.linspace(-400, 400, 2_000_001)
    # heavy Cauchy tails leave 2/(pi 400) ~ 1.6e-3 outside the window
    mass_p = np.trapezoid(velocity_density(poisson, v), v)
    assert mass_p == pytest.approx(2.0 / np.pi * np.arctan(400.0), abs=1e-6)
    mass_m = np.trapezoid(velocity_density(maxwellian, v), v)
    assert mass_m == pytest.approx(1.0, abs=1e-12)
