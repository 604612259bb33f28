"""Homogeneous velocity equilibria described through their Fourier transform.

An equilibrium is given by the transform ``m0hat(xi)`` of the background
density M0(v), normalized so that ``m0hat(0) = 1`` (unit total mass) for every
non-vacuum kind.  Built-in kinds:

* ``vacuum``      -- M0 = 0, transform identically zero,
* ``maxwellian``  -- m0hat(xi) = exp(-sigma^2 |xi|^2 / 2),
* ``poisson``     -- m0hat(xi) = exp(-|xi|) (Cauchy profile in velocity),
* ``tabulated``   -- cubic interpolation of user-supplied radial samples.

Each spec carries the regularity radius ``lambda0`` and the stability
constant ``theta`` used by the pointwise hypothesis check ``verify_m01``:

    sup_xi  e^{lambda0 <xi>^{1/3}} ( |m0hat| + |xi| |grad m0hat| )  <=  1/theta
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import VplabError

KINDS = ("vacuum", "maxwellian", "poisson", "tabulated")


@dataclass(frozen=True)
class EquilibriumSpec:
    """Immutable description of a homogeneous equilibrium.

    ``table`` (tabulated kind only) holds ``(r_grid, values)`` with a strictly
    increasing radial grid starting at 0; the transform is treated as radial,
    even in xi, and evaluation outside the grid hull is a domain error.
    """

    kind: str
    dim: int = 1
    lambda0: float = 0.9
    theta: float = 0.4
    sigma: float = 1.0
    table: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise VplabError(f"unknown equilibrium kind {self.kind!r}")
        if self.dim < 1:
            raise VplabError("dimension must be >= 1")
        if not (0.0 < self.lambda0 <= 1.0):
            raise VplabError("lambda0 must lie in (0, 1]")
        if not (0.0 < self.theta <= 1.0):
            raise VplabError("theta must lie in (0, 1]")
        if self.kind == "maxwellian" and self.sigma <= 0.0:
            raise VplabError("maxwellian velocity scale must be positive")
        if self.kind == "tabulated":
            if self.table is None:
                raise VplabError("tabulated kind needs a (grid, values) table")
            r, vals = self.table
            r = np.asarray(r, dtype=float)
            vals = np.asarray(vals, dtype=float)
            if r.ndim != 1 or r.shape != vals.shape:
                raise VplabError("table grid and values must be 1-d and equal length")
            if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
                raise VplabError("table grid must start at 0 and increase strictly")
            if not np.all(np.isfinite(vals)):
                raise VplabError("table values must be finite")
            spline = CubicSpline(r, vals)
            object.__setattr__(self, "_spline", spline)
            object.__setattr__(self, "_spline_deriv", spline.derivative())

    @property
    def hull_radius(self):
        """Largest |xi| at which the transform is defined (inf if closed form)."""
        if self.kind == "tabulated":
            return float(self.table[0][-1])
        return np.inf


def radial_value(eq, r):
    """Radial profile m(r) = m0hat at |xi| = r (all supported kinds are radial)."""
    r = np.asarray(r, dtype=float)
    if eq.kind == "vacuum":
        return np.zeros_like(r)
    if eq.kind == "maxwellian":
        return np.exp(-0.5 * (eq.sigma * r) ** 2)
    if eq.kind == "poisson":
        return np.exp(-r)
    if np.any(r > eq.hull_radius):
        raise VplabError("frequency outside the tabulated grid hull")
    return eq._spline(r)


def radial_derivative(eq, r):
    """d/dr of the radial profile; one-sided values for r > 0 only."""
    r = np.asarray(r, dtype=float)
    if eq.kind == "vacuum":
        return np.zeros_like(r)
    if eq.kind == "maxwellian":
        return -eq.sigma**2 * r * np.exp(-0.5 * (eq.sigma * r) ** 2)
    if eq.kind == "poisson":
        return -np.exp(-r)
    if np.any(r > eq.hull_radius):
        raise VplabError("frequency outside the tabulated grid hull")
    return eq._spline_deriv(r)


def _radius(eq, xi):
    """|xi| with d=1 scalars/arrays accepted directly; (..., d) otherwise."""
    xi = np.asarray(xi, dtype=float)
    if eq.dim == 1 and (xi.ndim == 0 or xi.shape[-1] != 1):
        return np.abs(xi), True
    if xi.ndim == 0 or xi.shape[-1] != eq.dim:
        raise VplabError(f"frequency must have {eq.dim} components")
    return np.sqrt(np.sum(xi * xi, axis=-1)), False


def fourier_value(eq, xi):
    """Transform m0hat at the frequency ``xi``.

    Accepts scalars (d=1) or arrays whose last axis has ``eq.dim`` components,
    broadcasting over leading axes.  Real output (all kinds are real and even).
    """
    r, _ = _radius(eq, xi)
    return radial_value(eq, r)


def grad_fourier_value(eq, xi):
    """Gradient of m0hat at ``xi``; shape matches ``xi``.

    The poisson kernel has a kink at xi = 0 where we return 0 by the symmetry
    convention (quadratures never place weight exactly there).
    """
    xi_arr = np.asarray(xi, dtype=float)
    r, collapsed = _radius(eq, xi)
    slope = radial_derivative(eq, r)
    if collapsed:
        return np.where(r > 0.0, slope * np.sign(xi_arr), 0.0)
    safe_r = np.where(r > 0.0, r, 1.0)
    unit = np.where(r[..., None] > 0.0, xi_arr / safe_r[..., None], 0.0)
    return slope[..., None] * unit


def ray_derivative_at_zero(eq, h=1e-6):
    """One-sided radial slope m'(0+) from a second-order forward difference.

    Used by the large-frequency tail expansion of the dispersion integrals;
    exactly zero for vacuum, O(h^2) error elsewhere.
    """
    if eq.kind == "vacuum":
        return 0.0
    m = lambda r: float(radial_value(eq, r))
    return (-3.0 * m(0.0) + 4.0 * m(h) - m(2.0 * h)) / (2.0 * h)


def decay_cutoff(eq, k_mag, tol=1e-17):
    """Radius S with s * |m0hat(s k)| < tol for all s >= S along the ray.

    Scans a geometric ladder of probe windows; for tabulated kinds the result
    is capped at the grid hull (mass beyond the hull is not represented).
    """
    if eq.kind == "vacuum":
        return 1.0
    if k_mag <= 0.0:
        raise VplabError("decay cutoff needs a nonzero spatial frequency")
    s = 1.0
    for _ in range(80):
        if eq.kind == "tabulated" and 2.0 * s * k_mag >= eq.hull_radius:
            return eq.hull_radius / k_mag
        probes = np.linspace(s, 2.0 * s, 9)
        env = np.max(probes * np.abs(radial_value(eq, probes * k_mag)))
        if env < tol:
            return 2.0 * s
        s *= 2.0
    return s


def verify_m01(eq, xi_max, n_samples):
    """Grid supremum of e^{lambda0 <xi>^{1/3}} (|m0hat| + |xi||grad|).

    Scans the radial profile on ``n_samples`` points of [0, xi_max] (radial
    kinds make this exhaustive up to grid resolution).  Returns a dict with
    the supremum, its location, and a pass flag ``sup <= 1/theta``.
    """
    if xi_max <= 0.0 or n_samples < 2:
        raise VplabError("verify_m01 needs xi_max > 0 and n_samples >= 2")
    r = np.linspace(0.0, min(xi_max, eq.hull_radius), n_samples)
    vals = np.abs(radial_value(eq, r)) + r * np.abs(radial_derivative(eq, r))
    weighted = np.exp(eq.lambda0 * (1.0 + r * r) ** (1.0 / 6.0)) * vals
    i = int(np.argmax(weighted))
    sup = float(weighted[i])
    return {
        "sup_value": sup,
        "worst_xi": float(r[i]),
        "passes": bool(sup <= 1.0 / eq.theta),
    }


def velocity_density(eq, v):
    """Physical-space background M0(v) on a velocity grid (d=1 closed forms).

    Needed by the phase-space oracle solver; tabulated equilibria would
    require a numerical inverse transform and are rejected here.
    """
    if eq.dim != 1:
        raise VplabError("velocity_density is implemented for d=1 only")
    v = np.asarray(v, dtype=float)
    if eq.kind == "vacuum":
        return np.zeros_like(v)
    if eq.kind == "maxwellian":
        return np.exp(-0.5 * (v / eq.sigma) ** 2) / (eq.sigma * np.sqrt(2.0 * np.pi))
    if eq.kind == "poisson":
        return 1.0 / (np.pi * (1.0 + v * v))
    raise VplabError("no closed-form velocity profile for tabulated equilibria")
