"""Density nonlinearities, Volterra marching, and Green's representation.

Per nonzero mode k the recorded density obeys a second-kind Volterra equation
whose kernel vanishes on the diagonal,

    forward:      rho(t) + int_{T1}^t rho(s) m0hat((t-s)k) (t-s) ds = N(t),
    final-state:  rho(t) - int_t^{T2} rho(s) m0hat((t-s)k) (t-s) ds = N'(t),

so product-trapezoidal marching is explicit and O(dt^2).  The equivalent
representation routes convolve the forcing with the Green's kernel:

    forward:      rho(t) = N(t) - int_{T1}^t N(s) Ghat(t-s, k) ds,
    final-state:  rho(t) = N'(t) - int_t^{T2} N'(s) Ghat(s-t, -k) ds.

Route agreement is the module's principal cross-check.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import equilibria
from .errors import VplabError


@dataclass
class DensitySeries:
    """Time-sampled density coefficients rho_hat[t_index, k_index]."""

    t_grid: np.ndarray
    k_list: np.ndarray
    rho_hat: np.ndarray
    stale: np.ndarray = None

    def __post_init__(self):
        self.t_grid = np.asarray(self.t_grid, dtype=float)
        self.k_list = np.asarray(self.k_list, dtype=int)
        self.rho_hat = np.asarray(self.rho_hat, dtype=complex)
        if self.rho_hat.shape != (self.t_grid.size, self.k_list.size):
            raise VplabError("rho_hat must have shape (n_times, n_modes)")
        if self.t_grid.size >= 2:
            steps = np.diff(self.t_grid)
            if np.max(np.abs(steps - steps[0])) > 1e-9 * max(abs(steps[0]), 1e-30):
                raise VplabError("density series requires a uniform time grid")

    @property
    def dt(self):
        return float(self.t_grid[1] - self.t_grid[0])

    def column(self, k):
        idx = np.where(self.k_list == int(k))[0]
        if idx.size == 0:
            raise VplabError(f"mode {k} not present in the series")
        return self.rho_hat[:, idx[0]]

    def sup_over_modes(self):
        """sup over nonzero, non-stale modes of |rho_hat| at each time."""
        mask = self.k_list != 0
        mag = np.abs(self.rho_hat[:, mask])
        if self.stale is not None:
            mag = np.where(self.stale[:, mask], 0.0, mag)
        return mag.max(axis=1) if mag.size else np.zeros(self.t_grid.size)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["t"]
            for k in self.k_list:
                header += [f"re[k={k}]", f"im[k={k}]"]
            writer.writerow(header)
            for i, t in enumerate(self.t_grid):
                row = [f"{t:.17e}"]
                for j in range(self.k_list.size):
                    z = self.rho_hat[i, j]
                    row += [f"{z.real:.17e}", f"{z.imag:.17e}"]
                writer.writerow(row)

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            k_list = [int(name.split("k=")[1].rstrip("]"))
                      for name in header[1::2]]
            rows = [[float(x) for x in row] for row in reader]
        data = np.array(rows)
        rho = data[:, 1::2] + 1j * data[:, 2::2]
        return cls(t_grid=data[:, 0], k_list=np.array(k_list), rho_hat=rho)


@dataclass(frozen=True)
class VolterraKernel:
    """Evaluation rule K(t, s; k) = m0hat((t-s) k) (t-s); zero on the diagonal."""

    eq: equilibria.EquilibriumSpec

    def lag_values(self, lags, k):
        """K at nonnegative lags t - s = lags for mode k (vectorized)."""
        lags = np.asarray(lags, dtype=float)
        k_mag = abs(float(k))
        return equilibria.radial_value(self.eq, lags * k_mag) * lags


def volterra_solve(kernel, forcing, direction="forward"):
    """March the second-kind Volterra equation; explicit because K(t,t) = 0.

    ``forcing`` is a DensitySeries holding N (forward) or N' (final-state);
    the k = 0 column is pinned to 0 by neutrality.
    """
    if direction not in ("forward", "final_state"):
        raise VplabError("direction must be 'forward' or 'final_state'")
    t = forcing.t_grid
    n = t.size
    dt = forcing.dt if n >= 2 else 0.0
    out = np.zeros_like(forcing.rho_hat)
    lags = dt * np.arange(n)
    for ci, k in enumerate(forcing.k_list):
        if k == 0:
            continue
        kern = kernel.lag_values(lags, k)
        N = forcing.rho_hat[:, ci]
        rho = np.zeros(n, dtype=complex)
        if direction == "forward":
            rho[0] = N[0]
            for m in range(1, n):
                acc = 0.5 * kern[m] * rho[0]
                if m >= 2:
                    acc += np.dot(kern[1:m][::-1], rho[1:m])
                rho[m] = N[m] - dt * acc
        else:
            rho[-1] = N[-1]
            for m in range(n - 2, -1, -1):
                acc = 0.5 * kern[n - 1 - m] * rho[-1]
                if n - 2 >= m + 1:
                    acc += np.dot(kern[1:n - 1 - m], rho[m + 1:n - 1])
                rho[m] = N[m] - dt * acc
        out[:, ci] = rho
    return DensitySeries(t_grid=t.copy(), k_list=forcing.k_list.copy(), rho_hat=out)


def representation(forcing, green_table, direction="forward"):
    """Convolve the forcing with the Green's kernel (trapezoid, O(dt^2))."""
    if direction not in ("forward", "final_state"):
        raise VplabError("direction must be 'forward' or 'final_state'")
    t = forcing.t_grid
    n = t.size
    dt = forcing.dt if n >= 2 else 0.0
    out = np.zeros_like(forcing.rho_hat)
    lags = dt * np.arange(n)
    for ci, k in enumerate(forcing.k_list):
        if k == 0:
            continue
        N = forcing.rho_hat[:, ci]
        if direction == "forward":
            g = np.asarray(green_table.value(lags, int(k)), dtype=complex)
            for m in range(n):
                if m == 0:
                    out[0, ci] = N[0]
                    continue
                w = np.full(m + 1, dt)
                w[0] = w[-1] = 0.5 * dt
                out[m, ci] = N[m] - np.dot(w, N[:m + 1][::-1] * g[:m + 1])
        else:
            g = np.asarray(green_table.value(lags, -int(k)), dtype=complex)
            for m in range(n):
                tail = n - m
                if tail == 1:
                    out[m, ci] = N[m]
                    continue
                w = np.full(tail, dt)
                w[0] = w[-1] = 0.5 * dt
                out[m, ci] = N[m] - np.dot(w, N[m:] * g[:tail])
    return DensitySeries(t_grid=t.copy(), k_list=forcing.k_list.copy(), rho_hat=out)


def nonlinearity_forward(history, t_grid, k):
    """Forward forcing N(t, k) reconstructed from a stored glide history:

        N(t,k) = ghat(T1, k, tk)
                 - (2pi)^-d sum_{l != 0} int_{T1}^t rho(s,l)
                        ghat(s, k-l, tk - sl) (t-s) k / l  ds

    (d = 1 form).  Trapezoid in s on the series grid; xi arguments outside
    the hull contribute 0, matching the solver's truncation.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 2:
        raise VplabError("need at least two time samples")
    grid = history.grid
    t0 = t_grid[0]
    dt = t_grid[1] - t_grid[0]
    k = int(k)

    first = history.value(np.full(t_grid.size, t0), k, t_grid * k)
    N = np.array(first, dtype=complex)

    inv_2pi = 1.0 / (2.0 * np.pi) ** grid.d
    rho_at = {}
    for l in grid.k_values:
        if l == 0:
            continue
        valid = np.abs(t_grid * l) <= grid.xi_max
        rho_l = np.zeros(t_grid.size, dtype=complex)
        if np.any(valid):
            rho_l[valid] = history.value(t_grid[valid], int(l), t_grid[valid] * l)
        rho_at[int(l)] = rho_l

    for m in range(1, t_grid.size):
        t = t_grid[m]
        s = t_grid[:m + 1]
        w = np.full(m + 1, dt)
        w[0] = w[-1] = 0.5 * dt
        total = 0.0 + 0.0j
        for l in grid.k_values:
            if l == 0:
                continue
            src = k - int(l)
            if abs(src) > grid.K:
                continue
            gvals = history.value(s, src, t * k - s * l)
            total += np.dot(w, rho_at[int(l)][:m + 1] * gvals * (t - s)) * (k / l)
        N[m] -= inv_2pi * total
    return DensitySeries(t_grid=t_grid, k_list=np.array([k]),
                         rho_hat=N[:, None])
