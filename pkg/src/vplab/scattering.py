"""Final-state, wave, and scattering maps of the gliding dynamics.

* final-state: integrate forward from data at t = 0 and certify convergence
  of the profile through a dyadic ladder of tail increments;
* wave map: for a ladder of horizons n, impose the target profile at t = n,
  integrate backward to 0, and confirm the solutions form a Cauchy sequence;
* scattering: conjugate the wave map by the (t, x) -> (-t, -x) reflection,
  then extract the forward final state.

Gaps and increments are measured in the discrete weighted Gevrey surrogate
norms of the diagnostics module, at the radius offsets the three maps lose.
"""

from dataclasses import dataclass, field

import numpy as np

from .diagnostics import gevrey_norm, state_difference
from .errors import NoConvergenceError, VplabError
from .kinetics import DENSITY_INTERP_DEFAULT, GlideState, glide_integrate

ONE_THIRD = 1.0 / 3.0


@dataclass
class OperatorRun:
    """Horizon-ladder record: per-horizon t=0 solutions and their gaps."""

    input_kind: str
    horizons: list
    solutions_t0: list
    cauchy_gaps: list
    output: GlideState
    info: dict = field(default_factory=dict)


def reflect_x(state):
    """Spatial reflection x -> -x at transform level: ghat(k, xi) -> ghat(-k, xi)."""
    out = state.copy()
    out.ghat = state.ghat[::-1, :].copy()
    return out


def final_state_forward(f0, eq, T, dt, nonlinear=True, interp=DENSITY_INTERP_DEFAULT,
                        ladder=None, norm_lambda=None):
    """Forward run returning the end-state profile and a convergence report.

    The report lists the profile increments |g(t') - g(t)| along a dyadic
    ladder up to T in the Gevrey surrogate norm (radius 0.6 lambda0 by
    default) plus a stretched-exponential fit of their decay.
    """
    if T <= f0.t:
        raise VplabError("final-state run needs T > start time")
    lam = 0.6 * eq.lambda0 if norm_lambda is None else norm_lambda
    if ladder is None:
        ladder = []
        t = T
        while t > max(8.0 * dt, T / 16.0):
            ladder.append(t)
            t *= 0.5
        ladder = sorted(ladder)
    ladder = [t for t in ladder if f0.t < t <= T]
    if ladder[-1] < T:
        ladder.append(T)

    state = f0.copy()
    checkpoints = []
    series_parts = []
    for t_next in ladder:
        run = glide_integrate(state, eq, t_next, dt, nonlinear=nonlinear,
                              interp=interp)
        state = run.state
        checkpoints.append(state.copy())
        series_parts.append(run.series)

    increments = []
    for a, b in zip(checkpoints[:-1], checkpoints[1:]):
        increments.append(gevrey_norm(state_difference(b, a), lam))
    report = {"ladder": ladder, "increments": increments, "norm_lambda": lam}
    xs = np.sqrt(1.0 + np.asarray(ladder[:-1]) ** 2) ** ONE_THIRD
    ys = np.asarray(increments)
    keep = ys > 0.0
    if np.sum(keep) >= 2:
        slope = float(np.polyfit(xs[keep], np.log(ys[keep]), 1)[0])
        report["fitted_rate"] = -slope
    else:
        report["fitted_rate"] = np.inf
    report["series_parts"] = series_parts
    return state, report


def wave_operator(g_inf, eq, horizons, dt, nonlinear=True, interp=DENSITY_INTERP_DEFAULT,
                  gap_lambda=None, gap_threshold=1e-3):
    """Backward-horizon construction of the t = 0 profile from a target state.

    For each horizon n the profile is pinned to the target at t = n and the
    system is integrated back to 0.  Successive t = 0 solutions must approach
    each other; growing gaps raise NoConvergenceError carrying the data.
    """
    horizons = sorted(float(n) for n in horizons)
    if not horizons:
        raise VplabError("need at least one horizon")
    lam = 0.75 * eq.lambda0 if gap_lambda is None else gap_lambda

    solutions = []
    for n in horizons:
        start = GlideState(g_inf.grid, n, g_inf.ghat.copy())
        run = glide_integrate(start, eq, 0.0, dt, nonlinear=nonlinear,
                              interp=interp)
        solutions.append(run.state)

    gaps = [gevrey_norm(state_difference(b, a), lam)
            for a, b in zip(solutions[:-1], solutions[1:])]
    scale = gevrey_norm(GlideState(g_inf.grid, 0.0, g_inf.ghat.copy()), lam)
    info = {"gap_lambda": lam, "target_norm": scale,
            "converged": bool(not gaps or gaps[-1] <= gap_threshold * scale)}
    if len(gaps) >= 2:
        for a, b in zip(gaps[:-1], gaps[1:]):
            if b > 1.2 * a and b > 1e-14 * scale:
                raise NoConvergenceError(
                    "horizon gaps are growing",
                    data={"horizons": horizons, "gaps": gaps, "scale": scale})
    return OperatorRun(input_kind="final_profile", horizons=horizons,
                       solutions_t0=solutions, cauchy_gaps=gaps,
                       output=solutions[-1], info=info)


def scattering_operator(g_minus_inf, eq, horizons, dt, nonlinear=True,
                        interp=DENSITY_INTERP_DEFAULT, forward_T=None):
    """Map the t -> -infinity profile to the forward final state.

    Reflection conjugation: reflect the input in x, build its wave-map
    solution at t = 0, reflect back (this realizes the backward half on
    t <= 0), then run the forward final-state extraction.
    """
    reflected = reflect_x(g_minus_inf)
    wave_run = wave_operator(reflected, eq, horizons, dt,
                             nonlinear=nonlinear, interp=interp)
    g0 = reflect_x(wave_run.output)
    g0.t = 0.0
    T = max(horizons) if forward_T is None else forward_T
    g_inf, forward_report = final_state_forward(
        g0, eq, T, dt, nonlinear=nonlinear, interp=interp)
    info = {"wave": wave_run.info, "forward": {
        k: v for k, v in forward_report.items() if k != "series_parts"}}
    run = OperatorRun(input_kind="past_profile", horizons=list(wave_run.horizons),
                      solutions_t0=wave_run.solutions_t0,
                      cauchy_gaps=wave_run.cauchy_gaps, output=g0, info=info)
    return g_inf, run


_PROBE_NORMS = {
    # operator: (lambda_in_upper, lambda_out, lambda_in_lower) / lambda0
    "final_state": (1.0, 0.75, 0.5),
    "wave": (1.0, 0.75, 0.5),
    "scattering": (1.0, 0.5, 0.25),
}


def lipschitz_probe(op, inputs, eq, horizons=None, T=None, dt=1e-2,
                    nonlinear=True, interp=DENSITY_INTERP_DEFAULT, norms=None, tol=1e-12):
    """Output-gap / input-gap ratios for a pair of inputs to one of the maps.

    ``norms`` overrides the (in_upper, out, in_lower) radius fractions of
    lambda0; identical inputs are reported as degenerate and skipped.
    """
    if op not in _PROBE_NORMS:
        raise VplabError(f"unknown operator {op!r}")
    a, b = inputs
    frac = _PROBE_NORMS[op] if norms is None else norms
    lam_in_up, lam_out, lam_in_lo = (f * eq.lambda0 for f in frac)

    gap_up = gevrey_norm(state_difference(a, b), lam_in_up)
    gap_lo = gevrey_norm(state_difference(a, b), lam_in_lo)
    if gap_up <= 10.0 * tol:
        return {"degenerate": True, "input_gap": gap_up}

    def apply(x):
        if op == "final_state":
            out, _ = final_state_forward(x, eq, T or max(horizons), dt,
                                         nonlinear=nonlinear, interp=interp)
            return out
        if op == "wave":
            return wave_operator(x, eq, horizons, dt, nonlinear=nonlinear,
                                 interp=interp).output
        out, _ = scattering_operator(x, eq, horizons, dt, nonlinear=nonlinear,
                                     interp=interp)
        return out

    out_a, out_b = apply(a), apply(b)
    out_gap = gevrey_norm(state_difference(out_a, out_b), lam_out)
    return {
        "degenerate": False,
        "upper_ratio": out_gap / gap_up,
        "lower_ratio": out_gap / gap_lo,
        "input_gap": gap_up,
        "output_gap": out_gap,
        "norms": {"in_upper": lam_in_up, "out": lam_out, "in_lower": lam_in_lo},
    }
