"""Figure rendering for the CLI report paths (Agg backend, files only)."""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

ONE_THIRD = 1.0 / 3.0


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def density_decay_figure(series, path, lambda0=None):
    """sup_k |rho_hat| against time on a log scale, with the fitted envelope."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    sup = series.sup_over_modes()
    ax.semilogy(series.t_grid, np.maximum(sup, 1e-300), lw=1.5, label=r"$\sup_k|\hat\rho|$")
    if lambda0 is not None and series.t_grid.size:
        bracket = np.sqrt(1.0 + series.t_grid**2)
        ref = np.max(sup) * np.exp(-lambda0 * (bracket**ONE_THIRD - bracket[0]**ONE_THIRD) / 4.0)
        ax.semilogy(series.t_grid, ref, "r--", lw=1.0,
                    label=r"$e^{-\lambda_0 \langle t\rangle^{1/3}/4}$ envelope")
    ax.set_xlabel("t")
    ax.set_ylabel("density modulus")
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _finish(fig, path)


def penrose_figure(report, path):
    """|1 + L| scan curves per mode with the located minimum."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    samples = report.samples
    for k in sorted(set(samples[:, 0])):
        block = samples[samples[:, 0] == k]
        ax.plot(block[:, 1], block[:, 2], lw=1.0, label=f"|k|={int(k)}")
    ax.axhline(report.margin, color="k", ls=":", lw=1.0)
    ax.plot([abs(report.argmin_tau)], [report.margin], "r*", ms=10,
            label=f"margin {report.margin:.4f}")
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$|1 + L(\tau, k)|$")
    ax.set_xlim(0, min(20.0, samples[:, 1].max()))
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _finish(fig, path)


def green_figure(table, path, lambda0=None, rate=0.95):
    """|Ghat(s, k)| with the stretched-exponential bound envelope."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for i, k in enumerate(table.k_list):
        mag = np.abs(table.values[i])
        ax.semilogy(table.s_grid, np.maximum(mag, 1e-300), lw=1.2, label=f"k={k}")
        if lambda0 is not None:
            x = (abs(k) * table.s_grid) ** ONE_THIRD
            env = max(np.max(mag), 1e-300) * np.exp(-rate * lambda0 * (x - x[0]))
            ax.semilogy(table.s_grid, env, ls="--", lw=0.8, alpha=0.6)
    ax.set_xlabel("s")
    ax.set_ylabel(r"$|\hat G(s,k)|$")
    ax.set_ylim(bottom=1e-16)
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _finish(fig, path)


def routes_figure(t_grid, route_values, path, labels=("marching", "resolvent")):
    """Per-route density magnitudes and their pointwise difference."""
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 6.0), sharex=True)
    for vals, lab in zip(route_values, labels):
        ax1.plot(t_grid, np.abs(vals), lw=1.2, label=lab)
    ax1.set_ylabel(r"$|\hat\rho(t,k)|$")
    ax1.grid(True, alpha=0.3)
    ax1.legend()
    diff = np.abs(np.asarray(route_values[0]) - np.asarray(route_values[1]))
    ax2.semilogy(t_grid, np.maximum(diff, 1e-300), lw=1.0, color="C3")
    ax2.set_xlabel("t")
    ax2.set_ylabel("route difference")
    ax2.grid(True, alpha=0.3)
    return _finish(fig, path)


def functionals_figure(samples, path):
    """Energy / Z / bootstrap composite time series."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ts = [s.t for s in samples]
    for p in sorted(samples[0].energy_p):
        ax.semilogy(ts, [s.energy_p[p] for s in samples], lw=1.2,
                    label=f"energy p={p}")
    for p in sorted(samples[0].znorm_p):
        ax.semilogy(ts, [max(s.znorm_p[p], 1e-300) for s in samples], lw=1.2,
                    ls="--", label=f"Z p={p}")
    ax.semilogy(ts, [s.bootstrap0 for s in samples], lw=1.8, color="k",
                label="bootstrap composite")
    ax.set_xlabel("t")
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _finish(fig, path)


def gaps_figure(run, path):
    """Horizon-ladder Cauchy gaps of an operator construction."""
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    if run.cauchy_gaps:
        mids = run.horizons[1:]
        ax.semilogy(mids, np.maximum(run.cauchy_gaps, 1e-300), "o-", lw=1.2)
    ax.set_xlabel("horizon")
    ax.set_ylabel("gap to previous horizon")
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def ladder_figure(report, path):
    """Final-state tail increments along the dyadic ladder."""
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    if report["increments"]:
        ax.semilogy(report["ladder"][:-1], np.maximum(report["increments"], 1e-300),
                    "s-", lw=1.2)
    ax.set_xlabel("ladder time")
    ax.set_ylabel("profile increment norm")
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)
