"""Configuration-driven command line front end.

    gausslind run <config.json> [--out DIR] [--threads N]
    gausslind selfcheck

A scenario is one JSON document selecting a mode and its parameters; the
output is one UTF-8 CSV file with '#'-prefixed header comments carrying
the tool version and a hash of the configuration, so that identical
configs produce identical bytes.  Exit codes: 0 success, 2 configuration
error, 3 numerical failure; failures emit one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .closed import wigner_ellipse
from .cosmology import (
    CosmoParams,
    de_sitter_squeezing,
    discord_cosmo,
    power_spectrum_correction,
)
from .errors import ConfigError, GausslindError
from .symplectic import particle_statistics, SqueezingState
from . import selfcheck as _selfcheck

MODES = ("evolve_closed", "evolve_open", "discord_map", "ellipse_series",
         "spectrum", "selfcheck")


def _fmt(v) -> str:
    """Shortest round-trip decimal representation."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _write_csv(path: Path, header: list[str], rows, config_hash: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# gausslind {__version__}\n")
        fh.write(f"# config sha256: {config_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _require(cfg: dict, key: str, typ=None):
    if key not in cfg:
        raise ConfigError(f"missing required config key {key!r}")
    v = cfg[key]
    if typ is not None and not isinstance(v, typ):
        raise ConfigError(f"config key {key!r} has wrong type {type(v).__name__}")
    return v


def _cosmo_params(cfg: dict) -> CosmoParams:
    c = _require(cfg, "cosmo", dict)
    try:
        return CosmoParams(
            kGamma_over_kstar=float(_require(c, "kGamma_over_kstar")),
            p=float(_require(c, "p")),
            ellH=float(_require(c, "ellH")),
            k_over_kstar=float(c.get("k_over_kstar", 1.0)),
            x_star=float(c.get("x_star", 1.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid cosmo parameters: {exc}") from exc


def _grid(cfg: dict) -> np.ndarray:
    g = _require(cfg, "grid", dict)
    x_start = float(_require(g, "x_start"))
    x_end = float(_require(g, "x_end"))
    points = int(_require(g, "points"))
    if points < 2:
        raise ConfigError("grid.points must be >= 2")
    if not (x_start > 0 and x_end > 0) or x_start == x_end:
        raise ConfigError("grid endpoints must be positive and distinct")
    return np.geomspace(x_start, x_end, points)


def _trajectory_rows(traj, x_grid, open_run: bool):
    rows = []
    for i, x in enumerate(x_grid):
        b = traj.block(i)
        s = traj.squeezing(i)
        r = s.r if s is not None else 0.0
        phi = s.phi if s is not None else 0.0
        lam = max(traj.det[i], 1.0)
        row = [x, b.g11, b.g12, b.g22, r, phi, lam, traj.purity[i]]
        if open_run:
            stats = particle_statistics(b)
            row += [math.sqrt(lam), stats.n, abs(stats.c)]
        rows.append(row)
    return rows


#: built-in frequency presets for the evolution modes; the grid variable
#: is x = -eta in every preset (for "free" the frequency is constant and
#: x is simply a reversed clock)
FREQUENCY_PRESETS = ("de_sitter", "free")


def _preset(cfg: dict) -> str:
    preset = cfg.get("preset", "de_sitter")
    if preset not in FREQUENCY_PRESETS:
        raise ConfigError(
            f"unknown preset {preset!r}; expected one of {FREQUENCY_PRESETS}")
    return preset


def _evolve_generic(cfg: dict, x_grid, kern) -> "object":
    from .closed import ModeFrequency
    from .opensys import evolve_open as _evolve
    from .symplectic import CovarianceBlock

    tol = cfg.get("tolerances", {})
    rtol = float(tol.get("rtol", 1e-11))
    atol = float(tol.get("atol", 1e-12))
    if _preset(cfg) == "de_sitter":
        from .cosmology import de_sitter_covariance_closed, de_sitter_frequency
        freq = de_sitter_frequency()
        ic = de_sitter_covariance_closed(float(x_grid[0]))
    else:
        freq = ModeFrequency.free(1.0)
        ic = CovarianceBlock.vacuum()
    return _evolve(freq, kern, (-float(x_grid[0]), -float(x_grid[-1])),
                   ic=ic, t_eval=[-float(x) for x in x_grid],
                   rtol=rtol, atol=atol)


def run_evolve_closed(cfg: dict, out_dir: Path, threads: int, cfg_hash: str) -> None:
    x_grid = _grid(cfg)
    traj = _evolve_generic(cfg, x_grid, None)
    rows = _trajectory_rows(traj, x_grid, open_run=False)
    _write_csv(out_dir / cfg.get("output_path", "evolve_closed.csv"),
               ["x", "g11", "g12", "g22", "r", "phi", "lam", "purity"],
               rows, cfg_hash)


def run_evolve_open(cfg: dict, out_dir: Path, threads: int, cfg_hash: str) -> None:
    from .opensys import EnvironmentKernel

    x_grid = _grid(cfg)
    if "source_const" in cfg:
        # generic constant dimensionless source, any frequency preset
        s0 = float(cfg["source_const"])
        if s0 < 0.0:
            raise ConfigError("source_const must be >= 0")
        kern = EnvironmentKernel(lambda t: s0, f"constant source {s0}")
    else:
        from .cosmology import cosmo_kernel

        params = _cosmo_params(cfg)
        if x_grid[0] > params.x_coupling_on:
            raise ConfigError(
                f"grid must start at or below the coupling-on point "
                f"{params.x_coupling_on}")
        kern = cosmo_kernel(params)
    traj = _evolve_generic(cfg, x_grid, kern)
    rows = _trajectory_rows(traj, x_grid, open_run=True)
    _write_csv(out_dir / cfg.get("output_path", "evolve_open.csv"),
               ["x", "g11", "g12", "g22", "r", "phi", "lam", "purity",
                "sigma0", "n_pairs", "abs_c"],
               rows, cfg_hash)


def run_discord_map(cfg: dict, out_dir: Path, threads: int, cfg_hash: str) -> None:
    p_lo, p_hi = (float(v) for v in cfg.get("p_range", (0.1, 9.9)))
    k_lo, k_hi = (float(v) for v in cfg.get("log10_kGamma_range", (-10.0, 6.0)))
    n_p, n_k = (int(v) for v in cfg.get("map_points", (40, 40)))
    x = float(cfg.get("x", math.exp(-20.0)))
    theta = float(cfg.get("theta", -math.pi / 4.0))
    ellH = float(cfg.get("cosmo", {}).get("ellH", 1e-3))
    method = cfg.get("method", "approx")
    p_vals = np.linspace(p_lo, p_hi, n_p)
    k_vals = np.linspace(k_lo, k_hi, n_k)
    singular = (2.0, 4.0, 5.0, 8.0)

    def cell(idx):
        i, j = divmod(idx, len(k_vals))
        p = float(p_vals[i])
        for s in singular:  # logarithmic powers: offset per the contract
            if abs(p - s) < 1e-4:
                p = s + 1e-4
        params = CosmoParams(kGamma_over_kstar=10.0 ** float(k_vals[j]), p=p,
                             ellH=ellH)
        res = discord_cosmo(x, theta, params, method=method)
        pur = math.exp(-2.0 * res.log_sigma_zero)
        return (float(p_vals[i]), float(k_vals[j]), res.discord, pur)

    indices = range(len(p_vals) * len(k_vals))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(cell, indices))
    else:
        rows = [cell(i) for i in indices]
    _write_csv(out_dir / cfg.get("output_path", "discord_map.csv"),
               ["p", "log10_kGamma_kstar", "discord", "purity"],
               rows, cfg_hash)


def run_ellipse_series(cfg: dict, out_dir: Path, threads: int, cfg_hash: str) -> None:
    x_grid = _grid(cfg)
    n_sigma = float(cfg.get("n_sigma", math.sqrt(2.0)))
    rows = []
    for x in x_grid:
        r, phi = de_sitter_squeezing(float(x))
        ell = wigner_ellipse(SqueezingState(r, phi, 1.0), n_sigma)
        rows.append([-math.log(x), ell.semi_major, ell.semi_minor, ell.tilt,
                     ell.semi_major / ell.semi_minor])
    _write_csv(out_dir / cfg.get("output_path", "ellipse_series.csv"),
               ["efolds", "semi_major", "semi_minor", "tilt", "axis_ratio"],
               rows, cfg_hash)


def run_spectrum(cfg: dict, out_dir: Path, threads: int, cfg_hash: str) -> None:
    base = _cosmo_params(cfg)
    k_lo, k_hi = (float(v) for v in cfg.get("k_range", (1e-2, 1e2)))
    points = int(cfg.get("points", 41))
    rows = []
    for k in np.geomspace(k_lo, k_hi, points):
        params = CosmoParams(base.kGamma_over_kstar, base.p, base.ellH,
                             k_over_kstar=float(k), x_star=base.x_star)
        corr = power_spectrum_correction(params)
        rows.append([float(k), corr.value, corr.regime.value, corr.time_dependent])
    _write_csv(out_dir / cfg.get("output_path", "spectrum.csv"),
               ["k_over_kstar", "dP_over_P", "regime", "time_dependent"],
               rows, cfg_hash)


RUNNERS = {
    "evolve_closed": run_evolve_closed,
    "evolve_open": run_evolve_open,
    "discord_map": run_discord_map,
    "ellipse_series": run_ellipse_series,
    "spectrum": run_spectrum,
}


def run_config(cfg: dict, out_dir: Path, threads: int) -> int:
    mode = _require(cfg, "mode", str)
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "selfcheck":
        return 0 if _selfcheck.run_all() else 3
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    cfg_hash = hashlib.sha256(canon.encode()).hexdigest()
    RUNNERS[mode](cfg, out_dir, threads, cfg_hash)
    return 0


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gausslind",
        description="Gaussian-state evolution and discord scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a JSON scenario")
    p_run.add_argument("config", help="path to the scenario JSON file")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--threads", type=int, default=1,
                       help="worker threads for grid sweeps")
    sub.add_parser("selfcheck", help="run the built-in validation suite")
    args = parser.parse_args(argv)

    if args.command == "selfcheck":
        try:
            return 0 if _selfcheck.run_all() else 3
        except GausslindError as exc:
            _emit_error(exc)
            return 3

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ConfigError("config root must be a JSON object")
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        _emit_error(exc)
        return 2

    try:
        return run_config(cfg, Path(args.out), max(1, int(args.threads)))
    except ConfigError as exc:
        _emit_error(exc)
        return 2
    except GausslindError as exc:
        _emit_error(exc)
        return 3
    except (ValueError, ArithmeticError) as exc:
        _emit_error(exc)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
