"""Weighted norms, energy / Z functionals, and damping-rate fits.

The Gevrey norm of a profile transform sums weighted derivative layers,

    |g|_{lam, s, n} = sum_{a <= n} || D^a_xi ghat(k, xi) e^{lam <k,xi>^s} ||_{L2},

with D^a_xi computed spectrally (multiplication by the conjugate variable),
exact at grid level for band-limited states.  The energy functional weights
the same layers with the time-dependent family A (or the increasing variant),

    E^p(t) = sum_k int <k,xi>^{-2p} A(t,k,xi)^2 sum_{a <= n} |D^a ghat|^2 dxi,

and the Z functional reads the density line xi = t k:

    Z^p(t) = sup_{k != 0} <k,tk>^{-p} A(t,k,tk) |ghat(t,k,tk)| |k|^{-beta}.

All reductions run through log-sum-exp, so weight growth cannot overflow.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from . import weights
from .errors import VplabError
from .interp import cubic_interp_uniform
from .kinetics import DENSITY_INTERP_DEFAULT, density_from_glide

ONE_THIRD = 1.0 / 3.0


def derivative_order(d):
    """Default derivative depth d' = floor(d/2 + 1)."""
    return d // 2 + 1


def xi_spectral_derivative(rows, order, xi_max):
    """Spectral d^order/dxi^order of uniformly sampled rows (..., N+1).

    The final sample duplicates the first periodically (symmetric grid with
    both endpoints); it is restored from the periodic image after the
    transform round trip.
    """
    if order == 0:
        return np.array(rows, dtype=complex)
    rows = np.asarray(rows, dtype=complex)
    n = rows.shape[-1] - 1
    core = rows[..., :n]
    dxi = 2.0 * xi_max / n
    v = 2.0 * np.pi * np.fft.fftfreq(n, d=dxi)
    # ifft coefficients reconstruct through e^{-i v xi}, so d/dxi is -i v
    spec = np.fft.ifft(core, axis=-1) * (-1j * v) ** order
    deriv = np.fft.fft(spec, axis=-1)
    out = np.empty_like(rows)
    out[..., :n] = deriv
    out[..., n] = deriv[..., 0]
    return out


def _derivative_stack(state, n):
    """|D^a ghat|^2 summed over a = 0..n; shape (n_k, n_xi)."""
    total = np.abs(state.ghat) ** 2
    for a in range(1, n + 1):
        total = total + np.abs(
            xi_spectral_derivative(state.ghat, a, state.grid.xi_max)) ** 2
    return total


def _log_quadratic_sum(log_weight2, sq_sum, dxi):
    """log of sum( e^{log_weight2} * sq_sum * dxi ), overflow-safe."""
    with np.errstate(divide="ignore"):
        log_terms = log_weight2 + np.log(sq_sum) + np.log(dxi)
    finite = np.isfinite(log_terms)
    if not np.any(finite):
        return -np.inf
    return float(logsumexp(log_terms[finite]))


def gevrey_norm(state, lam, s_exp=ONE_THIRD, n=None):
    """Discrete weighted Gevrey norm of a glide state (layer-summed form)."""
    grid = state.grid
    if n is None:
        n = derivative_order(grid.d)
    k_mesh = grid.k_values[:, None].astype(float)
    xi_mesh = grid.xi_grid[None, :]
    bracket = np.sqrt(1.0 + k_mesh**2 + xi_mesh**2)
    log_w2 = 2.0 * lam * bracket**s_exp
    total = 0.0
    for a in range(n + 1):
        layer = np.abs(xi_spectral_derivative(state.ghat, a, grid.xi_max)) ** 2
        log_sq = _log_quadratic_sum(log_w2, layer, grid.dxi)
        total += np.exp(0.5 * log_sq)
    return float(total)


def state_difference(a, b):
    """Glide state holding a.ghat - b.ghat (norm arguments for gap metrics)."""
    if a.grid != b.grid:
        raise VplabError("states live on different grids")
    out = a.copy()
    out.ghat = a.ghat - b.ghat
    return out


def energy(state, p, params, m=weights.NO_MOLLIFIER, n_derivs=None):
    """Weighted energy functional E^p at the state's own time."""
    if not (0.0 <= p <= 2.0):
        raise VplabError("p must lie in [0, 2]")
    grid = state.grid
    if n_derivs is None:
        n_derivs = derivative_order(grid.d)
    k_mesh = np.broadcast_to(grid.k_values[:, None].astype(float),
                             (grid.n_k, grid.n_xi))
    xi_mesh = np.broadcast_to(grid.xi_grid[None, :], (grid.n_k, grid.n_xi))
    log_a = weights.log_weight(params, state.t, k_mesh, xi_mesh, m)
    bracket = np.sqrt(1.0 + k_mesh**2 + xi_mesh**2)
    log_w2 = 2.0 * log_a - 2.0 * p * np.log(bracket)
    sq = _derivative_stack(state, n_derivs)
    return float(np.exp(_log_quadratic_sum(log_w2, sq, grid.dxi)))


def znorm(state, p, params, beta=0.5, m=weights.NO_MOLLIFIER, interp=DENSITY_INTERP_DEFAULT):
    """Weighted sup of the density line; stale modes are excluded."""
    if not (0.0 <= p <= 2.0):
        raise VplabError("p must lie in [0, 2]")
    grid = state.grid
    rho, stale = density_from_glide(state, interp=interp)
    best = 0.0
    t = state.t
    for i, k in enumerate(grid.k_values):
        if k == 0 or stale[i] or rho[i] == 0.0:
            continue
        tk = t * k
        log_a = float(weights.log_weight(params, t, float(k), tk, m))
        bracket = np.sqrt(1.0 + k * k + tk * tk)
        log_val = (log_a - p * np.log(bracket) + np.log(np.abs(rho[i]))
                   - beta * np.log(abs(float(k))))
        best = max(best, float(np.exp(log_val)))
    return best


@dataclass
class FunctionalSample:
    """One diagnostics row: energies, Z values, and the bootstrap composite."""

    t: float
    energy_p: dict
    znorm_p: dict
    bootstrap0: float
    direction: str


def functional_sample(state, params, p_values=(0, 2), beta=0.5,
                      time_power=None, m=weights.NO_MOLLIFIER, interp=DENSITY_INTERP_DEFAULT):
    """Evaluate E^p, Z^p and the composite E^0 + [Z^0 <t>^{6d}]^2."""
    grid = state.grid
    if time_power is None:
        time_power = 6 * grid.d
    energies = {p: energy(state, p, params, m) for p in p_values}
    zs = {p: znorm(state, p, params, beta=beta, m=m, interp=interp)
          for p in p_values}
    bracket_t = np.sqrt(1.0 + state.t**2)
    boot = energies.get(0, 0.0) + (zs.get(0, 0.0) * bracket_t**time_power) ** 2
    return FunctionalSample(t=state.t, energy_p=energies, znorm_p=zs,
                            bootstrap0=float(boot), direction=params.direction)


def pointwise_sup_check(state, p, params, m=weights.NO_MOLLIFIER, n_derivs=None):
    """Ratio of the per-mode weighted sup to the per-mode energy integral.

    Returns the worst ratio over modes and the fitted discrete constant
    C0 = sqrt(worst ratio); reported, not asserted against any continuum value.
    """
    grid = state.grid
    if n_derivs is None:
        n_derivs = derivative_order(grid.d)
    k_mesh = np.broadcast_to(grid.k_values[:, None].astype(float),
                             (grid.n_k, grid.n_xi))
    xi_mesh = np.broadcast_to(grid.xi_grid[None, :], (grid.n_k, grid.n_xi))
    log_a = weights.log_weight(params, state.t, k_mesh, xi_mesh, m)
    bracket = np.sqrt(1.0 + k_mesh**2 + xi_mesh**2)
    sq = _derivative_stack(state, n_derivs)

    worst = 0.0
    worst_k = None
    for i, k in enumerate(grid.k_values):
        with np.errstate(divide="ignore"):
            log_h = (log_a[i] - p * np.log(bracket[i])
                     + np.log(np.abs(state.ghat[i])))
        finite = np.isfinite(log_h)
        if not np.any(finite):
            continue
        log_sup2 = 2.0 * float(np.max(log_h[finite]))
        log_int = _log_quadratic_sum(
            2.0 * log_a[i] - 2.0 * p * np.log(bracket[i]), sq[i], grid.dxi)
        if not np.isfinite(log_int):
            continue
        ratio = np.exp(log_sup2 - log_int)
        if ratio > worst:
            worst, worst_k = float(ratio), int(k)
    return {"worst_ratio": worst, "C0_fit": float(np.sqrt(worst)),
            "worst_k": worst_k}


def decay_fit(series, lambda0, pass_margin=0.1):
    """Stretched-exponential damping fit of sup_k |rho_hat(t, k)|.

    Least-squares slope of log sup against <t>^{1/3} on the latter half of
    the series; c_fit is minus that slope.  Passes iff
    c_fit >= lambda0/4 - pass_margin * lambda0 and the fitted envelope
    sup_t |rho| e^{+lambda0 <t>^{1/3}/4} is finite (both reported).
    """
    t = series.t_grid
    if t.size < 8:
        raise VplabError("series too short for a decay fit")
    t_lo, t_hi = float(t[0]), float(t[-1])
    if t_hi < 8.0 * t_lo:
        raise VplabError("decay fit needs t_hi >= 8 t_lo")
    sup = series.sup_over_modes()
    bracket = np.sqrt(1.0 + t * t)
    envelope = float(np.max(sup * np.exp(lambda0 * bracket**ONE_THIRD / 4.0)))

    half = t >= 0.5 * (t_lo + t_hi)
    x = bracket[half] ** ONE_THIRD
    y = sup[half]
    keep = y > 0.0
    if np.sum(keep) < 4:
        raise VplabError("not enough nonzero samples in the fit window")
    slope = float(np.polyfit(x[keep], np.log(y[keep]), 1)[0])
    c_fit = -slope
    passes = (c_fit >= lambda0 / 4.0 - pass_margin * lambda0) and np.isfinite(envelope)
    return {"c_fit": c_fit, "passes": bool(passes), "envelope": envelope,
            "window": (float(0.5 * (t_lo + t_hi)), t_hi), "lambda0": lambda0}
