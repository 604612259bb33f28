import numpy as np
import pytest

from vplab.equilibria import EquilibriumSpec
from vplab.kinetics import (FourierGrid, cosine_mode_glide, cosine_mode_phase,
                            glide_integrate, phase_integrate, profile_from_phase)


@pytest.fixture(scope="session")
def poisson():
    return EquilibriumSpec("poisson", dim=1, lambda0=0.9, theta=0.4)


@pytest.fixture(scope="session")
def maxwellian():
    return EquilibriumSpec("maxwellian", dim=1, lambda0=0.9, theta=0.25)


@pytest.fixture(scope="session")
def vacuum():
    return EquilibriumSpec("vacuum", dim=1)


@pytest.fixture(scope="session")
def small_grid():
    return FourierGrid(d=1, K=4, xi_max=8.0, N_xi=64)


@pytest.fixture(scope="session")
def poisson_green_table(poisson):
    from vplab.green import build_green_table
    return build_green_table(poisson, [1], 20.0, 0.01)


@pytest.fixture(scope="session")
def reference_run(maxwellian):
    """The cross-validation workload shared by several acceptance criteria.

    Glide run at the reference resolution (K=16, N_xi=256, xi_max=32,
    dt=1e-3, eps=1e-3) to t=16 with checkpoints at t in {1, 5}, plus the
    phase-space oracle run to t=5 with matching checkpoints.
    """
    import time
    grid = FourierGrid(d=1, K=16, xi_max=32.0, N_xi=256)
    t0 = time.time()
    state = cosine_mode_glide(grid, eps=1e-3)
    initial = state.copy()
    run_a = glide_integrate(state, maxwellian, 1.0, 1e-3)
    g1 = run_a.state.copy()
    run_b = glide_integrate(run_a.state, maxwellian, 5.0, 1e-3)
    g5 = run_b.state.copy()
    glide_walltime = time.time() - t0
    run_c = glide_integrate(run_b.state, maxwellian, 16.0, 1e-3)

    series = _concat_series(run_a.series, run_b.series, run_c.series)

    t0 = time.time()
    ph = cosine_mode_phase(64, 1024, 8.0, eps=1e-3)
    ph1, diag1 = phase_integrate(ph, maxwellian, 1.0, 1e-3)
    ph5, diag5 = phase_integrate(ph1, maxwellian, 5.0, 1e-3)
    phase_walltime = time.time() - t0
    ph10, diag10 = phase_integrate(ph5, maxwellian, 10.0, 1e-3)
    p1 = profile_from_phase(ph1, grid)
    p5 = profile_from_phase(ph5, grid)
    return {
        "grid": grid,
        "initial": initial,
        "glide_t1": g1,
        "glide_t5": g5,
        "glide_t16": run_c.state,
        "series": series,
        "phase_t1": p1,
        "phase_t5": p5,
        "phase_diag": {k: np.concatenate([diag1[k], diag5[k], diag10[k]])
                       for k in diag1},
        "glide_walltime": glide_walltime,
        "phase_walltime": phase_walltime,
        "dt": 1e-3,
        "eps": 1e-3,
    }


def _concat_series(*parts):
    from vplab.density import DensitySeries
    t = np.concatenate([p.t_grid[:-1] for p in parts[:-1]] + [parts[-1].t_grid])
    rho = np.vstack([p.rho_hat[:-1] for p in parts[:-1]] + [parts[-1].rho_hat])
    stale = np.vstack([p.stale[:-1] for p in parts[:-1]] + [parts[-1].stale])
    return DensitySeries(t_grid=t, k_list=parts[0].k_list, rho_hat=rho, stale=stale)
