import numpy as np
import pytest

from vplab.errors import VplabError
from vplab.penrose import (DispersionQuery, derivative_bound_report,
                           dispersion_L, dispersion_L_by_parts,
                           dispersion_Lprime, dispersion_batch,
                           dispersion_derivative, penrose_margin)


def test_query_validation(poisson):
    with pytest.raises(VplabError):
        DispersionQuery(poisson, 0, 0.0)
    with pytest.raises(VplabError):
        DispersionQuery(poisson, 1, 1.0j)  # upper half-plane
    q = DispersionQuery(poisson, -2, 1.0 - 0.5j)
    assert q.k_mag == 2.0


def test_vacuum_dispersion(vacuum):
    assert dispersion_L(DispersionQuery(vacuum, 1, 2.0 - 1.0j)) == 0.0
    assert dispersion_Lprime(DispersionQuery(vacuum, 3, 0.5)) == 0.0


def test_poisson_closed_forms(poisson):
    # L(tau, k) = 1 / (|k| + i tau)^2
    assert dispersion_L(DispersionQuery(poisson, 1, 0.0)) == pytest.approx(1.0, rel=1e-10)
    assert dispersion_Lprime(DispersionQuery(poisson, 1, 0.0)) == pytest.approx(0.5, rel=1e-10)
    rng = np.random.default_rng(42)
    for k, n in ((1, 334), (2, 333), (3, 333)):
        taus = rng.uniform(-25, 25, n) - 1j * rng.uniform(0, 8, n)
        got = dispersion_batch(poisson, float(k), taus)
        exact = 1.0 / (k + 1j * taus) ** 2
        assert np.max(np.abs(got - exact) / np.abs(exact)) < 1e-10


def test_maxwellian_at_zero(maxwellian):
    # int_0^inf s e^{-s^2/2} ds = 1
    assert dispersion_L(DispersionQuery(maxwellian, 1, 0.0)) == pytest.approx(1.0, rel=1e-10)


def test_maxwellian_against_faddeeva(maxwellian):
    # independent closed form via the scaled complementary error function:
    # int_0^inf s e^{-a s^2 - i tau s} ds
    #   = 1/(2a) - i tau sqrt(pi/a)/(4a) wofz(-tau/(2 sqrt(a)))
    from scipy.special import wofz
    a = 0.5
    rng = np.random.default_rng(1)
    taus = rng.uniform(-10, 10, 24) - 1j * rng.uniform(0, 4, 24)
    exact = (1.0 / (2 * a)
             - 1j * taus * np.sqrt(np.pi / a) / (4 * a) * wofz(-taus / (2 * np.sqrt(a))))
    got = dispersion_batch(maxwellian, 1.0, taus)
    assert np.max(np.abs(got - exact) / np.abs(exact)) < 1e-9


def test_by_parts_route_agreement(poisson, maxwellian):
    assert dispersion_L_by_parts(DispersionQuery(poisson, 1, -1.0j)) == pytest.approx(
        0.25, rel=1e-9)
    for eq in (poisson, maxwellian):
        for tau in (1.0, -3.7, 12.0, 250.0, 1000.0):
            q = DispersionQuery(eq, 1, tau)
            a = dispersion_L(q)
            b = dispersion_L_by_parts(q)
            assert abs(a - b) / abs(a) < 1e-8


def test_by_parts_decay_slope(maxwellian):
    # |L| ~ C / tau^2 at large tau; check the log-log slope is close to -2
    taus = np.array([100.0, 200.0, 400.0, 800.0])
    vals = np.abs(dispersion_batch(maxwellian, 1.0, taus))
    slope = np.polyfit(np.log(taus), np.log(vals), 1)[0]
    assert slope < -1.0  # at least the by-parts 1/tau envelope
    assert slope == pytest.approx(-2.0, abs=0.2)


def test_by_parts_needs_nonzero_tau(poisson):
    with pytest.raises(VplabError):
        dispersion_L_by_parts(DispersionQuery(poisson, 1, 0.0))


def test_conjugation_symmetry(maxwellian, poisson):
    rng = np.random.default_rng(5)
    for eq in (maxwellian, poisson):
        for _ in range(8):
            tau = complex(rng.uniform(-10, 10), -rng.uniform(0, 5))
            a = dispersion_L(DispersionQuery(eq, 1, tau))
            b = dispersion_L(DispersionQuery(eq, 1, -np.conj(tau)))
            assert b == pytest.approx(np.conj(a), rel=1e-10, abs=1e-13)


def test_derivatives_poisson_closed_form(poisson):
    # D_tau 1/(1 + i tau)^2 = -2i/(1 + i tau)^3; second: -6/(1 + i tau)^4
    q = DispersionQuery(poisson, 1, 0.0)
    assert dispersion_derivative(q, 0) == pytest.approx(
        dispersion_L(q), rel=1e-12)
    assert dispersion_derivative(q, 1) == pytest.approx(-2.0j, rel=1e-10)
    assert dispersion_derivative(q, 2) == pytest.approx(-6.0, rel=1e-10)
    with pytest.raises(VplabError):
        dispersion_derivative(q, 7)


def test_derivative_matches_complex_step(maxwellian):
    q0 = DispersionQuery(maxwellian, 1, 2.0 - 1.0j)
    d1 = dispersion_derivative(q0, 1)
    h = 1e-5
    fd = (dispersion_L(DispersionQuery(maxwellian, 1, q0.tau + h))
          - dispersion_L(DispersionQuery(maxwellian, 1, q0.tau - h))) / (2 * h)
    assert d1 == pytest.approx(fd, rel=1e-6)


def test_derivative_bound_constants(poisson):
    rep = derivative_bound_report(poisson, 1, [0.0, 1.0, 5.0], a_max=3)
    assert all(np.isfinite(v) and v > 0 for v in rep.values())


def test_margin_vacuum(vacuum):
    rep = penrose_margin(vacuum, 4)
    assert rep.margin == 1.0
    assert not rep.zero_suspected
    assert all(w == 0 for w in rep.windings.values())


def test_margin_poisson_closed_form(poisson):
    # |1 + 1/(1 + i tau)^2|^2 = (tau^4 + 4)/(1 + tau^2)^2, minimized at
    # tau^2 = 4 with value 4/5, so the margin is sqrt(0.8) at |k| = 1
    rep = penrose_margin(poisson, 2, tau_step=0.05)
    assert rep.margin == pytest.approx(np.sqrt(0.8), abs=1e-6)
    assert rep.argmin_k == 1
    assert abs(rep.argmin_tau) == pytest.approx(2.0, abs=1e-4)
    assert not rep.zero_suspected


def test_margin_maxwellian_positive(maxwellian):
    rep = penrose_margin(maxwellian, 2)
    assert 0.0 < rep.margin < 1.0
    assert not rep.zero_suspected
