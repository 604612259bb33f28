"""Time-dependent Gevrey-3 weight families and their proven inequalities.

The decreasing family (used forward in time) is

    lam(t, r) = lam1 <r>^{1/3} + delta (1+t)^{-delta} <r>^{1/3}
                + delta (1 + t <r>^{-2/3})^{-delta} <r>^{1/3},

    A(t, k, xi) = exp(lam(t, |k, xi|)),

with lam1 in [0.5, 0.9] * lambda0 and delta = lambda0 / 200 exactly.  The
increasing family (final-state problem) flips the sign of both delta terms.
Weights are kept in the exponent (log domain) wherever they multiply state
arrays, so nothing here ever overflows.

A finite mollifier level L multiplies the weight by (1 + 2^{-L}<k,xi>)^{-4}.
"""

from dataclasses import dataclass

import numpy as np

from .errors import VplabError

ONE_THIRD = 1.0 / 3.0


@dataclass(frozen=True)
class WeightParams:
    """Exponent parameters; ``delta`` is pinned to lambda0/200."""

    lambda0: float
    lambda1: float
    direction: str = "decreasing"

    def __post_init__(self):
        if not (0.0 < self.lambda0 <= 1.0):
            raise VplabError("lambda0 must lie in (0, 1]")
        ratio = self.lambda1 / self.lambda0
        if not (0.5 - 1e-12 <= ratio <= 0.9 + 1e-12):
            raise VplabError("lambda1 must lie in [0.5, 0.9] * lambda0")
        if self.direction not in ("decreasing", "increasing"):
            raise VplabError("direction must be 'decreasing' or 'increasing'")

    @property
    def delta(self):
        return self.lambda0 / 200.0

    @property
    def sign(self):
        return 1.0 if self.direction == "decreasing" else -1.0


@dataclass(frozen=True)
class MollifierLevel:
    """Finite mollifier exponent L >= 4; ``L=None`` means no mollifier."""

    L: int = None

    def __post_init__(self):
        if self.L is not None and self.L < 4:
            raise VplabError("mollifier level must be >= 4 when finite")

    def log_factor(self, bracket):
        """log of (1 + 2^{-L} <k,xi>)^{-4}; zero when unmollified."""
        if self.L is None:
            return np.zeros_like(np.asarray(bracket, dtype=float))
        return -4.0 * np.log1p(2.0 ** (-self.L) * np.asarray(bracket, dtype=float))


NO_MOLLIFIER = MollifierLevel(None)


def lambda_exponent(p, t, r):
    """Exponent lam(t, r) (decreasing) or lam#(t, r) (increasing).

    Vectorized over ``t`` and ``r``; values lie between
    (lam1 -+ 2 delta) <r>^{1/3} and (lam1 +- 2 delta) <r>^{1/3}.
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    bracket = np.sqrt(1.0 + r * r)
    cube = bracket**ONE_THIRD
    d = p.delta
    term1 = d * (1.0 + t) ** (-d) * cube
    term2 = d * (1.0 + t * bracket ** (-2.0 * ONE_THIRD)) ** (-d) * cube
    return p.lambda1 * cube + p.sign * (term1 + term2)


def log_weight(p, t, k, xi, m=NO_MOLLIFIER, dim=1):
    """log A(t,k,xi) (+ mollifier log); never overflows.

    With ``dim=1`` the arguments are elementwise scalar frequencies; for
    ``dim > 1`` the last axis of ``k`` and ``xi`` holds the components.
    """
    k = np.asarray(k, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if dim == 1:
        r2 = k * k + xi * xi
    else:
        r2 = np.sum(k * k, axis=-1) + np.sum(xi * xi, axis=-1)
    r = np.sqrt(r2)
    lam = lambda_exponent(p, t, r)
    return lam + m.log_factor(np.sqrt(1.0 + r2))


def weight(p, t, k, xi, m=NO_MOLLIFIER, dim=1):
    """A(t,k,xi) (or the increasing variant) times the mollifier factor."""
    return np.exp(log_weight(p, t, k, xi, m, dim))


def exponent_time_difference(p, a, b, r):
    """lam(a, r) - lam(b, r) for 0 <= a <= b, in closed form.

    The time derivative integrates exactly:

        delta [ (1+a)^{-delta} - (1+b)^{-delta} ] <r>^{1/3}
      + delta [ (1+a q)^{-delta} - (1+b q)^{-delta} ] <r>^{1/3},

    with q = <r>^{-2/3}.  Equals lam#(b, r) - lam#(a, r) identically.
    """
    if np.any(np.asarray(a) > np.asarray(b)):
        raise VplabError("exponent_time_difference needs a <= b")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    r = np.asarray(r, dtype=float)
    bracket = np.sqrt(1.0 + r * r)
    cube = bracket**ONE_THIRD
    q = bracket ** (-2.0 * ONE_THIRD)
    d = p.delta
    part1 = d * ((1.0 + a) ** (-d) - (1.0 + b) ** (-d)) * cube
    part2 = d * ((1.0 + a * q) ** (-d) - (1.0 + b * q) ** (-d)) * cube
    return part1 + part2


# Sampling distribution for the property reports below: t log-uniform on
# [1e-2, 1e4], integer k components uniform on [-32, 32], xi components
# uniform on [-64, 64].  Seeded, so every report is reproducible.


def _draw_samples(rng, n, dim):
    t = 10.0 ** rng.uniform(-2.0, 4.0, size=n)
    k = rng.integers(-32, 33, size=(n, dim)).astype(float)
    kp = rng.integers(-32, 33, size=(n, dim)).astype(float)
    xi = rng.uniform(-64.0, 64.0, size=(n, dim))
    xip = rng.uniform(-64.0, 64.0, size=(n, dim))
    return t, k, xi, kp, xip


def check_submultiplicativity(p, samples, seed=0, dim=1):
    """Empirical check of the product bound

        A(t, k+k', xi+xi') <= A(t,k,xi) A(t,k',xi')
                              * exp(-(lam1/4) min(<k,xi>, <k',xi'>)^{1/3}).

    Draws ``samples`` tuples from the documented seeded distribution and
    reports the worst ratio (log-domain arithmetic); passes iff <= 1.
    """
    rng = np.random.default_rng(seed)
    t, k, xi, kp, xip = _draw_samples(rng, samples, dim)
    r = np.sqrt(np.sum(k * k + xi * xi, axis=-1))
    rp = np.sqrt(np.sum(kp * kp + xip * xip, axis=-1))
    rs = np.sqrt(np.sum((k + kp) ** 2 + (xi + xip) ** 2, axis=-1))
    bracket = np.sqrt(1.0 + r * r)
    bracketp = np.sqrt(1.0 + rp * rp)
    gain = (p.lambda1 / 4.0) * np.minimum(bracket, bracketp) ** ONE_THIRD
    log_ratio = (
        lambda_exponent(p, t, rs)
        - lambda_exponent(p, t, r)
        - lambda_exponent(p, t, rp)
        + gain
    )
    i = int(np.argmax(log_ratio))
    worst = float(np.exp(log_ratio[i]))
    return {
        "worst_ratio": worst,
        "passes": bool(np.all(log_ratio <= 0.0)),
        "violations": int(np.sum(log_ratio > 0.0)),
        "samples": int(samples),
        "seed": int(seed),
        "worst_sample": {
            "t": float(t[i]),
            "k": k[i].tolist(),
            "xi": xi[i].tolist(),
            "kp": kp[i].tolist(),
            "xip": xip[i].tolist(),
        },
    }


def commutator_constant(p, samples, seed=0, dim=1):
    """Empirical constant in the difference bound

        |A(t,k+k',xi+xi') - A(t,k,xi)|
            <= C A(t,k,xi) A(t,k',xi') e^{-(lam1/4)<k',xi'>^{1/3}} <k,xi>^{-2/3}

    on samples restricted to |k',xi'| <= |k,xi| / 8 (the small perturbation
    (k',xi') is drawn uniformly from that ball, with continuous components).
    Returns the fitted C (max observed ratio).
    """
    rng = np.random.default_rng(seed)
    t = 10.0 ** rng.uniform(-2.0, 4.0, size=samples)
    k = rng.integers(-32, 33, size=(samples, dim)).astype(float)
    xi = rng.uniform(-64.0, 64.0, size=(samples, dim))
    r = np.sqrt(np.sum(k * k + xi * xi, axis=-1))
    keep = r > 0.0
    t, k, xi, r = t[keep], k[keep], xi[keep], r[keep]
    direction = rng.normal(size=(t.size, 2 * dim))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    radius = (r / 8.0) * rng.uniform(0.0, 1.0, size=t.size) ** (1.0 / (2 * dim))
    kp = direction[:, :dim] * radius[:, None]
    xip = direction[:, dim:] * radius[:, None]
    rp = np.sqrt(np.sum(kp * kp + xip * xip, axis=-1))
    rs = np.sqrt(np.sum((k + kp) ** 2 + (xi + xip) ** 2, axis=-1))

    bracket = np.sqrt(1.0 + r * r)
    bracketp = np.sqrt(1.0 + rp * rp)
    lam = lambda_exponent(p, t, r)
    lam_p = lambda_exponent(p, t, rp)
    lam_s = lambda_exponent(p, t, rs)
    # |A(sum) - A| / A = |exp(lam_s - lam) - 1|, evaluated stably
    diff = np.abs(np.expm1(lam_s - lam))
    log_budget = lam_p - (p.lambda1 / 4.0) * bracketp**ONE_THIRD - (2.0 * ONE_THIRD) * np.log(bracket)
    ratio = diff * np.exp(-log_budget)
    i = int(np.argmax(ratio))
    return {
        "C_fit": float(ratio[i]),
        "samples": int(t.size),
        "seed": int(seed),
        "worst_sample": {"t": float(t[i]), "k": k[i].tolist(), "xi": xi[i].tolist()},
    }
