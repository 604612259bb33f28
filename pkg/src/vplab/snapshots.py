"""On-disk formats: array snapshots, run manifests.

A snapshot is a pair of files ``<name>.json`` + ``<name>.bin``: the header
records grid metadata, time, solver tag, and package version; the binary file
holds the raw array, little-endian, row-major, 64-bit floats (complex arrays
as interleaved re/im pairs, i.e. complex128).
"""

import hashlib
import json
from pathlib import Path

import numpy as np

from . import __version__
from .errors import VplabError
from .kinetics import FourierGrid, GlideState, PhaseState

_DTYPES = {"complex128": np.complex128, "float64": np.float64}


def _write_pair(path, header, array):
    path = Path(path)
    array = np.ascontiguousarray(array)
    if array.dtype not in (np.complex128, np.float64):
        raise VplabError("snapshots store float64 or complex128 arrays only")
    header = dict(header)
    header.update({
        "shape": list(array.shape),
        "dtype": str(array.dtype),
        "byte_order": "little",
        "order": "C",
        "version": __version__,
    })
    data = array.astype(array.dtype.newbyteorder("<"), copy=False).tobytes("C")
    path.with_suffix(".bin").write_bytes(data)
    path.with_suffix(".json").write_text(json.dumps(header, indent=2, sort_keys=True))


def _read_pair(path):
    path = Path(path)
    header = json.loads(path.with_suffix(".json").read_text())
    dtype = _DTYPES.get(header["dtype"])
    if dtype is None:
        raise VplabError(f"unsupported snapshot dtype {header['dtype']!r}")
    raw = path.with_suffix(".bin").read_bytes()
    array = np.frombuffer(raw, dtype=np.dtype(dtype).newbyteorder("<"))
    array = array.reshape(header["shape"]).astype(dtype)
    return header, array


def save_glide_state(path, state, solver="glide"):
    header = {
        "kind": "glide_state",
        "solver": solver,
        "t": state.t,
        "grid": {"d": state.grid.d, "K": state.grid.K,
                 "xi_max": state.grid.xi_max, "N_xi": state.grid.N_xi},
    }
    _write_pair(path, header, state.ghat)


def load_glide_state(path):
    header, array = _read_pair(path)
    if header.get("kind") != "glide_state":
        raise VplabError("not a glide-state snapshot")
    g = header["grid"]
    grid = FourierGrid(d=g["d"], K=g["K"], xi_max=g["xi_max"], N_xi=g["N_xi"])
    return GlideState(grid, float(header["t"]), array)


def save_phase_state(path, state, solver="split_step"):
    header = {
        "kind": "phase_state",
        "solver": solver,
        "t": state.t,
        "grid": {"N_x": state.N_x, "N_v": state.N_v, "V": state.V},
    }
    _write_pair(path, header, state.f)


def load_phase_state(path):
    header, array = _read_pair(path)
    if header.get("kind") != "phase_state":
        raise VplabError("not a phase-state snapshot")
    g = header["grid"]
    return PhaseState(g["N_x"], g["N_v"], g["V"], float(header["t"]), array)


def save_green_table(path, table):
    header = {
        "kind": "green_table",
        "k_list": [int(k) for k in table.k_list],
        "s0": float(table.s_grid[0]),
        "ds": table.ds,
        "n_s": int(table.s_grid.size),
        "radial": table.radial,
        "meta": _jsonable(table.meta),
    }
    _write_pair(path, header, table.values)


def load_green_table(path):
    from .green import GreenTable
    header, array = _read_pair(path)
    if header.get("kind") != "green_table":
        raise VplabError("not a Green-table snapshot")
    s_grid = header["s0"] + header["ds"] * np.arange(header["n_s"])
    return GreenTable(k_list=list(header["k_list"]), s_grid=s_grid,
                      values=array, meta=header.get("meta", {}),
                      radial=header.get("radial", True))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def file_sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir, subcommand, scenario_path=None, seed=None,
                   threads=1, outputs=(), status="ok", extra=None):
    """Reproducibility record for one run; written last on success."""
    manifest = {
        "subcommand": subcommand,
        "package_version": __version__,
        "seed": seed,
        "threads": threads,
        "status": status,
        "outputs": sorted(str(p) for p in outputs),
    }
    if scenario_path is not None:
        manifest["scenario_path"] = str(scenario_path)
        manifest["scenario_sha256"] = file_sha256(scenario_path)
    if extra:
        manifest.update(_jsonable(extra))
    path = Path(out_dir) / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return path
