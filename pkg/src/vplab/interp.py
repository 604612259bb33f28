"""Interpolation kernels on uniform grids shared by the solver modules."""

import numpy as np


def cubic_weights(u):
    """4-point Lagrange weights at fractional offset u in [0, 1)."""
    w_m1 = -u * (u - 1.0) * (u - 2.0) / 6.0
    w_0 = (u * u - 1.0) * (u - 2.0) / 2.0
    w_1 = -u * (u + 1.0) * (u - 2.0) / 2.0
    w_2 = u * (u * u - 1.0) / 6.0
    return w_m1, w_0, w_1, w_2


def cubic_interp_uniform(x0, dx, values, queries):
    """4-point Lagrange interpolation on a uniform grid, clamped stencils.

    ``values`` may be (n,) or (..., n); queries broadcast along the last axis.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    pos = (np.asarray(queries, dtype=float) - x0) / dx
    j = np.clip(np.floor(pos).astype(int), 1, n - 3)
    u = pos - j
    w = cubic_weights(u)
    out = sum(w[r] * values[..., j - 1 + r] for r in range(4))
    return out


def sinc_interp_uniform(x0, dx, values, queries):
    """Whittaker (band-limited) interpolation of uniform samples.

    Exact for rows whose inverse transform is supported inside the Nyquist
    window pi/dx; O(n) per query.  ``values`` is (n,) or (..., n); ``queries``
    is a scalar or 1-d array.
    """
    values = np.asarray(values)
    q = np.atleast_1d(np.asarray(queries, dtype=float))
    pos = (q - x0) / dx
    idx = np.arange(values.shape[-1])
    kernel = np.sinc(pos[:, None] - idx[None, :])
    out = values @ kernel.T
    return out if np.ndim(queries) else out[..., 0]


def shifted_columns_cubic(arr, sigma):
    """Sample ``arr`` at column positions j - sigma by cubic interpolation.

    result[..., j] = arr interpolated at fractional column index j - sigma,
    zero outside the grid.  Used for uniform frequency shifts of whole rows.
    """
    n = arr.shape[-1]
    n0 = int(np.floor(sigma))
    u = sigma - n0
    if u == 0.0:
        base = np.arange(n) - n0
        valid = (base >= 0) & (base < n)
        out = np.zeros_like(arr)
        out[..., valid] = arr[..., base[valid]]
        return out
    m = np.arange(n) - n0 - 1
    w = cubic_weights(np.array(1.0 - u))
    out = np.zeros_like(arr)
    for r in range(4):
        idx = m - 1 + r
        valid = (idx >= 0) & (idx < n)
        out[..., valid] += w[r] * arr[..., idx[valid]]
    return out
