"""Scenario configuration and the ``vplab`` command-line front end.

One JSON document describes a run (equilibrium, grids, weights, initial data,
solver options, diagnostics schedule); subcommands execute the module
pipelines and write delimited output, JSON reports, figures, and a manifest
sufficient to reproduce the run.  Exit codes: 0 success, 1 verification
failure, 2 scenario error, 3 divergence, 4 stability violation, 5 horizon
exceeded, 6 quadrature budget, 7 other internal error.
"""

import argparse
import copy
import glob as globmod
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import diagnostics, equilibria, green, kinetics, penrose, plotting, scattering, snapshots, weights
from .density import DensitySeries, VolterraKernel, representation, volterra_solve
from .errors import (DivergenceError, HorizonExceededError,
                     PenroseInstabilityError, QuadratureError, ScenarioError,
                     VplabError)

DEFAULTS = {
    "equilibrium": {"kind": "maxwellian", "dim": 1, "lambda0": 0.9,
                    "theta": 0.25, "sigma": 1.0, "table_path": None},
    "grid": {"K": 16, "xi_max": 32.0, "N_xi": 256},
    "phase_grid": {"N_x": 64, "N_v": 1024, "V": 8.0},
    "weights": {"lambda1_fraction": 0.8, "direction": "decreasing",
                "mollifier": None},
    "initial_data": {"family": "cosine_mode", "epsilon": 1e-3, "k0": 1,
                     "v_scale": 1.0, "xi0": 0.0, "amplitude": 1e-3,
                     "path": None},
    "solver": {"dt": 1e-3, "T": 1.0, "nonlinear": True,
               "direction": "forward", "interp": kinetics.DENSITY_INTERP_DEFAULT,
               "override_horizon": False},
    "diagnostics": {"every": 100, "p_values": [0, 2], "beta": 0.5,
                    "time_power": None},
    "penrose": {"k_max": 4, "tau_step": 0.05},
    "green": {"k_list": [1], "s_max": 20.0, "ds": 0.01},
    "density": {"route": "both", "forcing_csv": None, "constant": 1.0,
                "T": 20.0, "dt": 0.01, "k_list": [1]},
    "scattering": {"horizons": [2.0, 4.0, 8.0]},
    "output_dir": "out",
    "seed": 0,
}


def _merge_checked(base, override, trail=""):
    """Deep-merge ``override`` into ``base`` rejecting unknown keys."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        path = f"{trail}.{key}" if trail else key
        if key not in base:
            raise ScenarioError(f"unknown scenario key: {path}")
        if isinstance(base[key], dict) and isinstance(value, dict):
            merged[key] = _merge_checked(base[key], value, path)
        else:
            merged[key] = value
    return merged


@dataclass
class Scenario:
    """Validated run description; ``raw`` is the merged parameter tree."""

    raw: dict
    source: Path = None

    def __getitem__(self, key):
        return self.raw[key]

    # -- constructors for the domain objects -------------------------------
    def equilibrium(self):
        e = self.raw["equilibrium"]
        table = None
        if e["kind"] == "tabulated":
            if not e["table_path"]:
                raise ScenarioError("equilibrium.table_path required for tabulated kind")
            data = np.loadtxt(e["table_path"], delimiter=",")
            table = (data[:, 0], data[:, 1])
        return equilibria.EquilibriumSpec(
            kind=e["kind"], dim=e["dim"], lambda0=e["lambda0"],
            theta=e["theta"], sigma=e["sigma"], table=table)

    def fourier_grid(self):
        g = self.raw["grid"]
        return kinetics.FourierGrid(d=self.raw["equilibrium"]["dim"],
                                    K=g["K"], xi_max=g["xi_max"], N_xi=g["N_xi"])

    def weight_params(self):
        w = self.raw["weights"]
        lam0 = self.raw["equilibrium"]["lambda0"]
        return weights.WeightParams(lambda0=lam0,
                                    lambda1=w["lambda1_fraction"] * lam0,
                                    direction=w["direction"])

    def mollifier(self):
        level = self.raw["weights"]["mollifier"]
        return weights.MollifierLevel(level)

    def initial_state(self, grid):
        d = self.raw["initial_data"]
        if d["family"] == "cosine_mode":
            return kinetics.cosine_mode_glide(grid, d["epsilon"], k0=d["k0"],
                                              v_scale=d["v_scale"])
        if d["family"] == "impulse":
            return kinetics.impulse_glide(grid, d["k0"], d["xi0"], d["amplitude"])
        if d["family"] == "from_snapshot":
            if not d["path"]:
                raise ScenarioError("initial_data.path required for from_snapshot")
            return snapshots.load_glide_state(d["path"])
        raise ScenarioError(f"unknown initial_data.family {d['family']!r}")

    def phase_state(self):
        d = self.raw["initial_data"]
        p = self.raw["phase_grid"]
        if d["family"] != "cosine_mode":
            raise ScenarioError("phase oracle supports the cosine_mode family only")
        return kinetics.cosine_mode_phase(p["N_x"], p["N_v"], p["V"],
                                          d["epsilon"], k0=d["k0"],
                                          v_scale=d["v_scale"])


def load_scenario(path, validate=True):
    """Read, include, merge with defaults, and validate a scenario file."""
    path = Path(path)
    if not path.exists():
        raise ScenarioError(f"scenario file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc

    seen = set()

    def expand(doc, base_dir):
        inc = doc.pop("include", None)
        if inc is None:
            return doc
        inc_path = (base_dir / inc).resolve()
        if inc_path in seen:
            raise ScenarioError(f"circular scenario include: {inc_path}")
        seen.add(inc_path)
        if not inc_path.exists():
            raise ScenarioError(f"included scenario not found: {inc_path}")
        parent = expand(json.loads(inc_path.read_text()), inc_path.parent)
        return _merge_checked(_merge_checked(DEFAULTS, parent), doc)

    if "include" in raw:
        merged = expand(raw, path.parent)
    else:
        merged = _merge_checked(DEFAULTS, raw)
    scenario = Scenario(raw=merged, source=path)
    if validate:
        _validate(scenario)
    return scenario


def _validate(sc):
    s = sc.raw["solver"]
    if s["dt"] <= 0.0:
        raise ScenarioError("solver.dt must be positive")
    if s["direction"] not in ("forward", "backward"):
        raise ScenarioError("solver.direction must be forward or backward")
    if s["interp"] not in ("cubic", "bandlimited"):
        raise ScenarioError("solver.interp must be cubic or bandlimited")
    d = sc.raw["initial_data"]
    if d["family"] == "cosine_mode" and d["epsilon"] <= 0.0:
        raise ScenarioError("initial_data.epsilon must be positive")
    if d["family"] == "from_snapshot" and d["path"] and not Path(d["path"] + ".json").exists():
        raise ScenarioError(f"initial_data.path snapshot missing: {d['path']}")
    e = sc.raw["equilibrium"]
    if e["kind"] == "tabulated" and e["table_path"] and not Path(e["table_path"]).exists():
        raise ScenarioError(f"equilibrium.table_path missing: {e['table_path']}")
    dens = sc.raw["density"]
    if dens["forcing_csv"] and not Path(dens["forcing_csv"]).exists():
        raise ScenarioError(f"density.forcing_csv missing: {dens['forcing_csv']}")
    if e["dim"] == 1:
        # grid solvers exist for d = 1 only; dimension-agnostic subcommands
        # (penrose, green, density) never touch the grid
        grid = sc.fourier_grid()
        if s["T"] > grid.horizon + 1e-12 and not s["override_horizon"]:
            raise ScenarioError(
                f"solver.T = {s['T']} exceeds the horizon xi_max/K = {grid.horizon}; "
                "density reads for the largest modes would leave the grid "
                "(set solver.override_horizon or pass --override-horizon to accept "
                "per-mode staleness)")
    # instantiating validates parameter ranges
    sc.equilibrium()
    sc.weight_params()
    sc.mollifier()


# ----------------------------------------------------------------------
# subcommand implementations


def _out_dir(scenario, args):
    out = Path(args.out) if args.out else Path(scenario.raw["output_dir"])
    (out / "figures").mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(scenario, args):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    grid = scenario.fourier_grid()
    s = scenario.raw["solver"]
    state = scenario.initial_state(grid)
    t_end = s["T"] if s["direction"] == "forward" else 0.0
    if s["direction"] == "backward":
        state.t = s["T"]
    every = max(1, int(scenario.raw["diagnostics"]["every"]))
    run = kinetics.glide_integrate(state, eq, t_end, s["dt"],
                                   nonlinear=s["nonlinear"], interp=s["interp"],
                                   snapshot_every=every * s["dt"])
    outputs = []
    run.series.to_csv(out / "density.csv")
    outputs.append(out / "density.csv")
    for i, (t_snap, ghat) in enumerate(zip(run.history.times,
                                           run.history.snapshots)):
        snap = kinetics.GlideState(grid, t_snap, ghat.copy())
        snapshots.save_glide_state(out / f"state_{i:04d}", snap)
        outputs += [out / f"state_{i:04d}.json", out / f"state_{i:04d}.bin"]
    snapshots.save_glide_state(out / "state_final", run.state)
    outputs += [out / "state_final.json", out / "state_final.bin"]
    fig = plotting.density_decay_figure(run.series, out / "figures" / "density_decay.png",
                                        lambda0=eq.lambda0)
    outputs.append(fig)
    snapshots.write_manifest(out, "simulate", scenario.source, args.seed,
                             args.threads, outputs,
                             extra={"info": run.info, "horizon": grid.horizon})
    return 0


def cmd_penrose(scenario, args):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    p = scenario.raw["penrose"]
    report = penrose.penrose_margin(eq, p["k_max"], tau_step=p["tau_step"],
                                    threads=args.threads)
    outputs = []
    (out / "penrose.json").write_text(json.dumps(report.to_dict(), indent=2))
    outputs.append(out / "penrose.json")
    np.savetxt(out / "penrose_samples.csv", report.samples, delimiter=",",
               header="abs_k,tau,abs_one_plus_L", comments="", fmt="%.17e")
    outputs.append(out / "penrose_samples.csv")
    fig = plotting.penrose_figure(report, out / "figures" / "penrose_margin.png")
    outputs.append(fig)
    snapshots.write_manifest(out, "penrose", scenario.source, args.seed,
                             args.threads, outputs,
                             extra={"margin": report.margin})
    return 0


def cmd_green(scenario, args):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    g = scenario.raw["green"]
    table = green.build_green_table(eq, g["k_list"], g["s_max"], g["ds"],
                                    threads=args.threads)
    outputs = []
    snapshots.save_green_table(out / "green", table)
    outputs += [out / "green.json", out / "green.bin"]
    rows = []
    for i, k in enumerate(table.k_list):
        bound = np.exp(-0.95 * eq.lambda0 * (np.abs(k) * table.s_grid) ** (1.0 / 3.0))
        for j, s_val in enumerate(table.s_grid):
            rows.append((s_val, k, np.abs(table.values[i, j]), bound[j]))
    np.savetxt(out / "green.csv", np.array(rows), delimiter=",",
               header="s,k,abs_G,decay_bound", comments="", fmt="%.17e")
    outputs.append(out / "green.csv")
    fig = plotting.green_figure(table, out / "figures" / "green_decay.png",
                                lambda0=eq.lambda0)
    outputs.append(fig)
    decay = green.verify_green_decay(table, eq.lambda0)
    (out / "green_decay.json").write_text(json.dumps(snapshots._jsonable(decay), indent=2))
    outputs.append(out / "green_decay.json")
    snapshots.write_manifest(out, "green", scenario.source, args.seed,
                             args.threads, outputs, extra={"decay": decay})
    return 0


def cmd_density(scenario, args):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    cfg = scenario.raw["density"]
    route = args.route or cfg["route"]
    if cfg["forcing_csv"]:
        forcing = DensitySeries.from_csv(cfg["forcing_csv"])
    else:
        t_grid = np.arange(0.0, cfg["T"] + 0.5 * cfg["dt"], cfg["dt"])
        k_list = np.array(cfg["k_list"], dtype=int)
        vals = np.full((t_grid.size, k_list.size), cfg["constant"], dtype=complex)
        forcing = DensitySeries(t_grid=t_grid, k_list=k_list, rho_hat=vals)
    outputs = []
    results = {}
    if route in ("volterra", "both"):
        results["volterra"] = volterra_solve(VolterraKernel(eq), forcing)
    if route in ("green", "both"):
        k_list = [int(k) for k in forcing.k_list if k != 0]
        table = green.build_green_table(eq, k_list, float(forcing.t_grid[-1]),
                                        forcing.dt, threads=args.threads)
        results["green"] = representation(forcing, table)
    for name, series in results.items():
        series.to_csv(out / f"density_{name}.csv")
        outputs.append(out / f"density_{name}.csv")
    report = {"route": route}
    nonzero = forcing.k_list[forcing.k_list != 0]
    if len(results) == 2 and nonzero.size:
        diff = np.max(np.abs(results["volterra"].rho_hat - results["green"].rho_hat))
        report["max_route_difference"] = float(diff)
        k0 = int(nonzero[0])
        fig = plotting.routes_figure(
            forcing.t_grid,
            [results["volterra"].column(k0), results["green"].column(k0)],
            out / "figures" / "density_routes.png")
        outputs.append(fig)
    (out / "density.json").write_text(json.dumps(report, indent=2))
    outputs.append(out / "density.json")
    snapshots.write_manifest(out, "density", scenario.source, args.seed,
                             args.threads, outputs, extra=report)
    return 0


def cmd_diagnose(scenario, args):
    out = _out_dir(scenario, args)
    params = scenario.weight_params()
    moll = scenario.mollifier()
    cfg = scenario.raw["diagnostics"]
    paths = sorted(globmod.glob(args.snapshots)) if args.snapshots else []
    if not paths:
        raise ScenarioError("diagnose needs --snapshots matching at least one state")
    samples = []
    for p in paths:
        state = snapshots.load_glide_state(Path(p).with_suffix(""))
        samples.append(diagnostics.functional_sample(
            state, params, p_values=tuple(cfg["p_values"]), beta=cfg["beta"],
            time_power=cfg["time_power"], m=moll))
    outputs = []
    with open(out / "functionals.csv", "w") as fh:
        ps = sorted(samples[0].energy_p)
        header = ["t"] + [f"energy_p{p}" for p in ps] + [f"znorm_p{p}" for p in ps] + ["bootstrap0"]
        fh.write(",".join(header) + "\n")
        for smp in samples:
            row = [smp.t] + [smp.energy_p[p] for p in ps] + \
                  [smp.znorm_p[p] for p in ps] + [smp.bootstrap0]
            fh.write(",".join(f"{v:.17e}" for v in row) + "\n")
    outputs.append(out / "functionals.csv")
    fig = plotting.functionals_figure(samples, out / "figures" / "functionals.png")
    outputs.append(fig)
    report = {"n_snapshots": len(samples)}
    if args.density_csv:
        series = DensitySeries.from_csv(args.density_csv)
        eq = scenario.equilibrium()
        report["decay_fit"] = diagnostics.decay_fit(series, eq.lambda0)
    (out / "diagnose.json").write_text(json.dumps(snapshots._jsonable(report), indent=2))
    outputs.append(out / "diagnose.json")
    snapshots.write_manifest(out, "diagnose", scenario.source, args.seed,
                             args.threads, outputs, extra=report)
    return 0


def cmd_finalstate(scenario, args):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    grid = scenario.fourier_grid()
    s = scenario.raw["solver"]
    state = scenario.initial_state(grid)
    g_inf, report = scattering.final_state_forward(
        state, eq, s["T"], s["dt"], nonlinear=s["nonlinear"], interp=s["interp"])
    outputs = []
    snapshots.save_glide_state(out / "final_profile", g_inf)
    outputs += [out / "final_profile.json", out / "final_profile.bin"]
    pieces = report.pop("series_parts")
    merged = DensitySeries(
        t_grid=np.concatenate([p.t_grid[:-1] for p in pieces[:-1]] + [pieces[-1].t_grid]),
        k_list=pieces[0].k_list,
        rho_hat=np.vstack([p.rho_hat[:-1] for p in pieces[:-1]] + [pieces[-1].rho_hat]))
    merged.to_csv(out / "density.csv")
    outputs.append(out / "density.csv")
    fig = plotting.ladder_figure(report, out / "figures" / "tail_increments.png")
    outputs.append(fig)
    (out / "finalstate.json").write_text(json.dumps(snapshots._jsonable(report), indent=2))
    outputs.append(out / "finalstate.json")
    snapshots.write_manifest(out, "finalstate", scenario.source, args.seed,
                             args.threads, outputs, extra={"report": report})
    return 0


def _operator_common(scenario, args, which):
    out = _out_dir(scenario, args)
    eq = scenario.equilibrium()
    grid = scenario.fourier_grid()
    s = scenario.raw["solver"]
    horizons = scenario.raw["scattering"]["horizons"]
    state = scenario.initial_state(grid)
    outputs = []
    if which == "wave":
        run = scattering.wave_operator(state, eq, horizons, s["dt"],
                                       nonlinear=s["nonlinear"], interp=s["interp"])
        result_state = run.output
        extra = {"gaps": run.cauchy_gaps, "info": run.info}
    else:
        g_inf, run = scattering.scattering_operator(
            state, eq, horizons, s["dt"], nonlinear=s["nonlinear"],
            interp=s["interp"])
        result_state = g_inf
        extra = {"gaps": run.cauchy_gaps, "info": run.info}
    snapshots.save_glide_state(out / f"{which}_output", result_state)
    outputs += [out / f"{which}_output.json", out / f"{which}_output.bin"]
    fig = plotting.gaps_figure(run, out / "figures" / f"{which}_gaps.png")
    outputs.append(fig)
    (out / f"{which}.json").write_text(json.dumps(snapshots._jsonable(extra), indent=2))
    outputs.append(out / f"{which}.json")
    snapshots.write_manifest(out, which, scenario.source, args.seed,
                             args.threads, outputs, extra=extra)
    return 0


def cmd_wave(scenario, args):
    return _operator_common(scenario, args, "wave")


def cmd_scatter(scenario, args):
    return _operator_common(scenario, args, "scatter")


def cmd_verify(scenario, args):
    """Seeded property suites; exit 0 iff every suite passes."""
    out = _out_dir(scenario, args)
    seed = args.seed if args.seed is not None else scenario.raw["seed"]
    results = {}

    params = weights.WeightParams(lambda0=0.9, lambda1=0.72)
    sub = weights.check_submultiplicativity(params, 10_000, seed=seed)
    results["weights_submultiplicativity"] = {
        "passes": sub["passes"], "worst_ratio": sub["worst_ratio"]}

    c1 = weights.commutator_constant(params, 10_000, seed=seed)
    c2 = weights.commutator_constant(params, 20_000, seed=seed)
    drift = abs(c2["C_fit"] - c1["C_fit"]) / c1["C_fit"]
    results["weights_commutator"] = {
        "passes": bool(np.isfinite(c1["C_fit"]) and drift < 0.10),
        "C_fit": c1["C_fit"], "doubling_drift": drift}

    pois = equilibria.EquilibriumSpec("poisson", dim=1, lambda0=0.9, theta=0.4)
    rng = np.random.default_rng(seed)
    taus = rng.uniform(-30.0, 30.0, 200) - 1j * rng.uniform(0.0, 10.0, 200)
    worst = 0.0
    for k in (1, 2):
        got = penrose.dispersion_batch(pois, float(k), taus)
        exact = 1.0 / (k + 1j * taus) ** 2
        worst = max(worst, float(np.max(np.abs(got - exact) / np.abs(exact))))
    results["penrose_closed_form"] = {"passes": worst <= 1e-8, "max_rel_err": worst}

    s_grid = np.linspace(0.0, 20.0, 801)
    vals, _ = green.green_function(pois, 1, s_grid)
    g_err = float(np.max(np.abs(vals.real - np.exp(-s_grid) * np.sin(s_grid))))
    neg, _ = green.green_function(pois, 1, np.linspace(-4.0, -0.05, 40))
    leak = float(np.max(np.abs(neg)))
    results["green_support_decay"] = {
        "passes": g_err <= 1e-6 and leak <= 1e-6,
        "max_err": g_err, "support_leakage": leak}

    t_grid = np.arange(0.0, 20.0 + 0.005, 0.01)
    forcing = DensitySeries(t_grid=t_grid, k_list=np.array([1]),
                            rho_hat=np.ones((t_grid.size, 1), dtype=complex))
    rho_v = volterra_solve(VolterraKernel(pois), forcing)
    table = green.build_green_table(pois, [1], 20.0, 0.01)
    rho_g = representation(forcing, table)
    closed = (1.0 + np.exp(-t_grid) * (np.cos(t_grid) + np.sin(t_grid))) / 2.0
    err_v = float(np.max(np.abs(rho_v.column(1) - closed)))
    err_g = float(np.max(np.abs(rho_g.column(1) - closed)))
    tol = 5.0 * 0.01**2
    results["volterra_route_equivalence"] = {
        "passes": err_v <= tol and err_g <= tol,
        "marching_err": err_v, "resolvent_err": err_g, "tolerance": tol}

    all_pass = all(r["passes"] for r in results.values())
    for name, r in results.items():
        print(f"{name}: {'PASS' if r['passes'] else 'FAIL'}")
    (out / "verify_manifest.json").write_text(
        json.dumps(snapshots._jsonable({"passes": all_pass, "suites": results}),
                   indent=2))
    snapshots.write_manifest(out, "verify", scenario.source, seed,
                             args.threads, [out / "verify_manifest.json"],
                             status="ok" if all_pass else "failed",
                             extra={"passes": all_pass})
    return 0 if all_pass else 1


COMMANDS = {
    "simulate": cmd_simulate,
    "penrose": cmd_penrose,
    "green": cmd_green,
    "density": cmd_density,
    "diagnose": cmd_diagnose,
    "finalstate": cmd_finalstate,
    "wave": cmd_wave,
    "scatter": cmd_scatter,
    "verify": cmd_verify,
}

_ERROR_CODES = (
    (ScenarioError, 2),
    (DivergenceError, 3),
    (PenroseInstabilityError, 4),
    (HorizonExceededError, 5),
    (QuadratureError, 6),
    (VplabError, 7),
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vplab",
        description="numerical laboratory for confined Vlasov-Poisson dynamics")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=name != "verify",
                       help="scenario JSON document")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--override-horizon", action="store_true",
                       help="allow T beyond xi_max/K (per-mode staleness)")
        if name == "density":
            p.add_argument("--route", choices=["volterra", "green", "both"],
                           default=None)
        if name == "diagnose":
            p.add_argument("--snapshots", default=None,
                           help="glob of state snapshot .json files")
            p.add_argument("--density-csv", default=None)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.scenario:
            scenario = load_scenario(args.scenario, validate=False)
        else:
            scenario = Scenario(raw=copy.deepcopy(DEFAULTS))
        if args.override_horizon:
            scenario.raw["solver"]["override_horizon"] = True
        if args.seed is not None:
            scenario.raw["seed"] = args.seed
        _validate(scenario)
        return COMMANDS[args.subcommand](scenario, args)
    except tuple(e for e, _ in _ERROR_CODES) as exc:
        for etype, code in _ERROR_CODES:
            if isinstance(exc, etype):
                print(f"error: {exc}", file=sys.stderr)
                if args.out:
                    try:
                        Path(args.out).mkdir(parents=True, exist_ok=True)
                        snapshots.write_manifest(
                            Path(args.out), args.subcommand,
                            getattr(args, "scenario", None), args.seed,
                            args.threads, [], status="failed",
                            extra={"error": str(exc)})
                    except Exception:
                        pass
                return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
