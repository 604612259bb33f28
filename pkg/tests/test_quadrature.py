import numpy as np
import pytest

from vplab.errors import QuadratureError
from vplab.quadrature import oscillatory_integral, oscillatory_transform


def test_poisson_kernel_closed_form():
    kern = lambda s: s * np.exp(-s)
    taus = np.array([0.0, 1.0, -2.5, 10.0, 50.0, 2.0 - 3.0j, -5.0 - 0.5j])
    got = oscillatory_transform(kern, taus, 0.0, 50.0, rtol=1e-12)
    exact = 1.0 / (1.0 + 1j * taus) ** 2
    assert np.max(np.abs(got - exact) / np.abs(exact)) < 1e-11


def test_gaussian_moment():
    val = oscillatory_integral(lambda s: s * np.exp(-0.5 * s * s), 0.0, 0.0, 12.0)
    assert val == pytest.approx(1.0, rel=1e-12)


def test_high_frequency_cancellation():
    # relative accuracy saturates at the roundoff floor but stays ~1e-8
    kern = lambda s: s * np.exp(-s)
    tau = 1000.0
    got = oscillatory_integral(kern, tau, 0.0, 50.0, rtol=1e-12)
    exact = 1.0 / (1.0 + 1j * tau) ** 2
    assert abs(got - exact) / abs(exact) < 1e-8


def test_zero_kernel():
    z = oscillatory_transform(lambda s: np.zeros_like(s), [1.0, 7.0], 0.0, 5.0)
    assert np.all(z == 0.0)


def test_positive_sign_transform():
    # int_0^inf e^{-s} e^{+i w s} ds = 1 / (1 - i w)
    got = oscillatory_integral(lambda s: np.exp(-s), 3.0, 0.0, 60.0, sign=+1.0)
    assert got == pytest.approx(1.0 / (1.0 - 3.0j), rel=1e-11)


def test_budget_exhaustion():
    with pytest.raises(QuadratureError):
        oscillatory_transform(lambda s: np.sin(50.0 / (s + 1e-3)), [1e4], 0.0,
                              100.0, rtol=1e-14, max_nodes=2000)


def test_empty_interval_rejected():
    with pytest.raises(QuadratureError):
        oscillatory_transform(lambda s: s, [1.0], 2.0, 2.0)
