"""Dispersion function of the linearized density response and stability margins.

The dispersion function, for integer spatial frequency k != 0 and complex
time-frequency tau in the closed lower half-plane, is

    L(tau, k) = int_0^inf e^{-i tau s} s m0hat(s k) ds,

and the resolvent symbol is L' = L / (1 + L).  The stability margin is

    inf |1 + L(tau, k)|  over  k != 0, Im(tau) <= 0.

Since 1 + L is analytic in the open half-plane, continuous up to the boundary,
and tends to 1 at infinity, the infimum is attained on the real axis unless
1 + L has an interior zero; interior zeros are detected by a winding-number
(argument principle) sweep along a large closed contour.  For radial m0hat the
function depends on k only through |k|, so scans cover distinct magnitudes.
"""

import math
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.optimize import minimize_scalar

from . import equilibria
from .errors import PenroseInstabilityError, VplabError
from .quadrature import oscillatory_transform

RESOLVENT_GUARD = 1e-12


@dataclass(frozen=True)
class DispersionQuery:
    """Point query (equilibrium, nonzero integer k, tau with Im tau <= 0)."""

    eq: equilibria.EquilibriumSpec
    k: tuple
    tau: complex

    def __post_init__(self):
        k = np.atleast_1d(np.asarray(self.k, dtype=int))
        if k.size != self.eq.dim:
            raise VplabError(f"k must have {self.eq.dim} integer components")
        if not np.any(k != 0):
            raise VplabError("k must be nonzero")
        if np.imag(self.tau) > 0.0:
            raise VplabError("tau must lie in the closed lower half-plane")
        object.__setattr__(self, "k", tuple(int(c) for c in k))

    @property
    def k_mag(self):
        return float(np.linalg.norm(self.k))


@dataclass
class PenroseReport:
    """Result of a margin scan; ``samples`` holds (|k|, tau, |1+L|) rows."""

    margin: float
    argmin_k: float
    argmin_tau: float
    zero_suspected: bool
    tau_cutoff: dict = field(default_factory=dict)
    windings: dict = field(default_factory=dict)
    samples: np.ndarray = None

    def to_dict(self):
        return {
            "margin": self.margin,
            "argmin_k": self.argmin_k,
            "argmin_tau": self.argmin_tau,
            "zero_suspected": self.zero_suspected,
            "tau_cutoff": {str(k): v for k, v in self.tau_cutoff.items()},
            "windings": {str(k): v for k, v in self.windings.items()},
        }


def dispersion_batch(eq, k_mag, taus, rtol=1e-11, atol=0.0, tail_tol=1e-17):
    """L(tau, k) for an array of taus sharing one |k| (vectorized quadrature).

    Wide batches are bucketed by octaves of |Re tau| so that slowly
    oscillating frequencies do not inherit the fine panels the fast ones need.
    """
    if k_mag <= 0.0:
        raise VplabError("dispersion needs a nonzero spatial frequency")
    taus = np.asarray(taus, dtype=complex)
    flat = np.atleast_1d(taus).ravel()
    if np.any(flat.imag > 1e-14):
        raise VplabError("tau must lie in the closed lower half-plane")
    s_max = equilibria.decay_cutoff(eq, k_mag, tol=tail_tol)
    kernel = lambda s: s * equilibria.radial_value(eq, s * k_mag)

    absre = np.abs(flat.real)
    fmax = float(absre.max()) if flat.size else 0.0
    out = np.empty(flat.shape, dtype=complex)
    if flat.size <= 32 or fmax <= 16.0:
        out[:] = oscillatory_transform(kernel, flat, 0.0, s_max, sign=-1.0,
                                       rtol=rtol, atol=atol)
    else:
        octave = np.zeros(flat.size, dtype=int)
        live = absre > 8.0
        octave[live] = np.ceil(np.log2(absre[live] / 8.0)).astype(int)
        for o in np.unique(octave):
            sel = octave == o
            out[sel] = oscillatory_transform(kernel, flat[sel], 0.0, s_max,
                                             sign=-1.0, rtol=rtol, atol=atol)
    return out.reshape(np.atleast_1d(taus).shape)


def dispersion_L(q, rtol=1e-11):
    """Adaptive quadrature of the semi-infinite dispersion integral."""
    return complex(dispersion_batch(q.eq, q.k_mag, [q.tau], rtol=rtol)[0])


def dispersion_L_by_parts(q, rtol=1e-11):
    """L via the integrated-by-parts kernel, preferred for large |tau|:

        i tau L(tau, k) = int_0^inf e^{-i tau s} [m0hat(sk) + s k.grad m0hat(sk)] ds.
    """
    if q.tau == 0:
        raise VplabError("the by-parts route requires tau != 0")
    k_mag = q.k_mag
    s_max = equilibria.decay_cutoff(q.eq, k_mag)

    def kernel(s):
        return (equilibria.radial_value(q.eq, s * k_mag)
                + s * k_mag * equilibria.radial_derivative(q.eq, s * k_mag))

    integral = oscillatory_transform(kernel, [q.tau], 0.0, s_max, sign=-1.0,
                                     rtol=rtol)[0]
    return complex(integral / (1j * q.tau))


def dispersion_Lprime(q, rtol=1e-11):
    """Resolvent symbol L / (1 + L); raises near a stability violation."""
    L = dispersion_L(q, rtol=rtol)
    denom = 1.0 + L
    if abs(denom) <= RESOLVENT_GUARD:
        raise PenroseInstabilityError(
            f"|1 + L| = {abs(denom):.3e} at k={q.k}, tau={q.tau}")
    return L / denom


def lprime_batch(eq, k_mag, taus, rtol=1e-11, atol=0.0, tail_tol=1e-17):
    """Batched resolvent symbol along a tau array."""
    L = dispersion_batch(eq, k_mag, taus, rtol=rtol, atol=atol, tail_tol=tail_tol)
    denom = 1.0 + L
    if np.any(np.abs(denom) <= RESOLVENT_GUARD):
        raise PenroseInstabilityError(f"|1 + L| below guard for |k|={k_mag}")
    return L / denom


def dispersion_derivative(q, a, rtol=1e-11):
    """a-th tau derivative of L, by differentiation under the integral:

        D^a_tau L = int_0^inf (-i s)^a e^{-i tau s} s m0hat(sk) ds.

    Desk-scale verification only; a <= 6.
    """
    if not (0 <= a <= 6):
        raise VplabError("derivative order must satisfy 0 <= a <= 6")
    k_mag = q.k_mag
    s_max = equilibria.decay_cutoff(q.eq, k_mag)

    def kernel(s):
        return (-1j * s) ** a * s * equilibria.radial_value(q.eq, s * k_mag)

    return complex(oscillatory_transform(kernel, [q.tau], 0.0, s_max,
                                         sign=-1.0, rtol=rtol)[0])


def derivative_bound_report(eq, k, tau_values, a_max=3):
    """Fitted constants in <tau> |D^a L| <= C (3a+5)! / (|k| lambda0^3)^{a+1}.

    Evaluates the derivative along real tau samples and reports, per order a,
    the smallest C making the bound hold on the sample set.
    """
    k_mag = float(np.linalg.norm(np.atleast_1d(k)))
    out = {}
    for a in range(a_max + 1):
        scale = math.factorial(3 * a + 5) / (k_mag * eq.lambda0**3) ** (a + 1)
        worst = 0.0
        for tau in tau_values:
            q = DispersionQuery(eq, k, complex(tau))
            val = abs(dispersion_derivative(q, a))
            bracket = math.sqrt(1.0 + float(np.real(tau)) ** 2)
            worst = max(worst, bracket * val / scale)
        out[a] = worst
    return out


def _local_minima(values, max_candidates=8, prominence=1e-9):
    """Best refinement candidates: prominent interior minima plus endpoints.

    Quadrature noise (~1e-11) creates spurious dips on flat stretches, so
    candidates need a minimal prominence and are capped at the
    ``max_candidates`` smallest values.
    """
    interior = np.where(
        (values[1:-1] < values[:-2] - prominence)
        & (values[1:-1] < values[2:] - prominence))[0] + 1
    idx = sorted(set([0, len(values) - 1] + [int(i) for i in interior]),
                 key=lambda i: values[i])
    return idx[:max_candidates]


def _winding_number(eq, k_mag, radius, rtol=1e-6):
    """Winding of 1 + L along the closed lower-half-plane contour of ``radius``.

    Contour: real segment [-R, R] then the semicircle R e^{-i theta}.  L -> 0
    on the arc as R grows, so a nonzero winding flags an interior zero.
    """
    n_line = 2048
    n_arc = 512
    taus_line = np.linspace(-radius, radius, n_line)
    theta = np.linspace(0.0, np.pi, n_arc + 1)[1:-1]
    taus_arc = radius * np.exp(-1j * theta)
    taus = np.concatenate([taus_line, taus_arc])
    # winding is an integer count; modest accuracy suffices
    vals = 1.0 + dispersion_batch(eq, k_mag, taus, rtol=rtol, atol=1e-7,
                                  tail_tol=1e-10)
    loop = np.concatenate([vals, vals[:1]])
    total = np.sum(np.diff(np.unwrap(np.angle(loop))))
    return int(np.rint(total / (2.0 * np.pi)))


def _scan_one_k(eq, k_abs, tau_step, rtol):
    tau_cut = max(50.0, 20.0 * k_abs)
    n = int(np.ceil(tau_cut / tau_step)) + 1
    taus = np.linspace(0.0, tau_cut, n)
    # coarse pass locates candidates; refinement below re-evaluates tightly
    mod = np.abs(1.0 + dispersion_batch(eq, k_abs, taus, rtol=1e-8, atol=1e-10,
                                        tail_tol=1e-12))

    if mod.max() - mod.min() < 1e-13:
        # flat modulus (vacuum); nothing to refine
        i = int(np.argmin(mod))
        winding = _winding_number(eq, k_abs, tau_cut)
        return float(mod[i]), float(taus[i]), tau_cut, winding, np.column_stack(
            [np.full(n, k_abs), taus, mod])

    best_val, best_tau = np.inf, 0.0
    for i in _local_minima(mod):
        lo = taus[max(i - 1, 0)]
        hi = taus[min(i + 1, n - 1)]
        if hi > lo:
            f = lambda t: abs(1.0 + dispersion_batch(eq, k_abs, [t], rtol=rtol, atol=1e-13)[0])
            res = minimize_scalar(f, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-8})
            cand_val, cand_tau = float(res.fun), float(res.x)
        else:
            cand_val, cand_tau = float(mod[i]), float(taus[i])
        if cand_val < best_val:
            best_val, best_tau = cand_val, cand_tau
    winding = _winding_number(eq, k_abs, tau_cut)
    return best_val, best_tau, tau_cut, winding, np.column_stack(
        [np.full(n, k_abs), taus, mod])


def lattice_magnitudes(dim, k_max):
    """Distinct |k| of nonzero integer vectors in Z^dim with |k| <= k_max."""
    if dim == 1:
        return [float(k) for k in range(1, k_max + 1)]
    sq = {0}
    for _ in range(dim):
        sq = {a + b * b for a in sq for b in range(0, k_max + 1)}
    return sorted(np.sqrt(s) for s in sq if 0 < s <= k_max * k_max)


def penrose_margin(eq, k_max, tau_step=0.05, rtol=1e-10, threads=1):
    """Scan the stability margin over 0 < |k| <= k_max.

    Radial transforms depend on k only through |k|, so the scan covers the
    distinct lattice magnitudes up to k_max.  Real-axis scan (conjugation
    symmetry covers tau < 0 for the real even transforms) with bounded
    refinement of local minima, plus an argument-principle zero check per
    magnitude.  Beyond the per-k cutoff max(50, 20|k|) the modulus is within
    1e-3 of 1 by the by-parts envelope, recorded rather than scanned.
    """
    if k_max < 1:
        raise VplabError("k_max must be >= 1")
    k_values = lattice_magnitudes(eq.dim, k_max)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda ka: _scan_one_k(eq, ka, tau_step, rtol), k_values))
    else:
        rows = [_scan_one_k(eq, ka, tau_step, rtol) for ka in k_values]

    margin, argmin_k, argmin_tau = np.inf, k_values[0], 0.0
    cutoffs, windings, sample_blocks = {}, {}, []
    zero_suspected = False
    for ka, (val, tau, cut, wind, block) in zip(k_values, rows):
        cutoffs[ka] = cut
        windings[ka] = wind
        sample_blocks.append(block)
        if wind != 0:
            zero_suspected = True
        if val < margin:
            margin, argmin_k, argmin_tau = val, ka, tau
    return PenroseReport(
        margin=float(margin),
        argmin_k=float(argmin_k),
        argmin_tau=float(argmin_tau),
        zero_suspected=zero_suspected,
        tau_cutoff=cutoffs,
        windings=windings,
        samples=np.vstack(sample_blocks),
    )
