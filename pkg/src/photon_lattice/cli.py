"""Command-line entry point: configuration, seeding, execution, serialization.

Precedence for every setting: built-in default < config file < command-line
flag. All physical inputs are in units of J (J = 1 internally). Numbers in
CSV output are rendered with 17 significant digits so re-runs with the same
seed produce byte-identical files.
"""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .disorder import DisorderConfig, disordered_sweep
from .ensemble import (EnsembleConfig, draw_initial_condition, ensemble_stats,
                       window_stats)
from .errors import AllRealizationsFailed, PhotonLatticeError
from .integrate import IntegratorConfig, integrate
from .model import ChainParams
from .scaling import (classify_decay, detect_threshold, length_sweep,
                      threshold_scaling)
from .stability import stability_scan

USAGE_ERROR = 1
NUMERICAL_ERROR = 2


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def write_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else _fmt(v)
                              for v in row) + "\n")


def parse_grid(text):
    """Integer grid: 'start:stop:step' or comma-separated values."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {text!r}")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid range {text!r}")
        return list(range(start, stop + 1, step))
    return [int(v) for v in text.split(",")]


def parse_values(text):
    return [float(v) for v in str(text).split(",")]


# (name, converter, help) for every config/flag key, shared by all commands.
_SETTINGS = {
    "sites": (str, "chain length, or grid start:stop:step / comma list"),
    "u": (float, "Kerr nonlinearity U/J"),
    "p": (float, "drive amplitude p/J"),
    "kappa": (float, "boundary dissipation kappa/J"),
    "kappa_bulk": (float, "bulk dissipation kappa_bulk/J"),
    "delta": (float, "drive detuning delta/J"),
    "t_end": (float, "integration horizon (units of 1/J)"),
    "rel_tol": (float, "relative integration tolerance"),
    "abs_tol": (float, "absolute integration tolerance"),
    "sample_dt": (float, "sampling interval (units of 1/J)"),
    "max_step": (float, "maximum integrator step"),
    "ic": (str, "initial condition: zero or random"),
    "ic_radius": (float, "radius of the random-IC complex disc"),
    "realizations": (int, "ensemble size"),
    "seed": (int, "master seed"),
    "transient": (float, "discarded transient time"),
    "window": (float, "averaging window length"),
    "sigma_star": (float, "variance threshold for N_t"),
    "axis": (str, "scaling axis: u, p or kappa_bulk"),
    "values": (str, "comma list of axis values"),
    "w": (float, "disorder width W/J"),
    "configs": (int, "number of disorder configurations"),
    "u_values": (str, "comma list of U values (phase diagram)"),
    "w_values": (str, "comma list of W values (phase diagram)"),
    "full_field": (int, "store the full field per sample (0/1)"),
}

_DEFAULTS = {
    "sites": "10", "u": 0.0, "p": 0.0, "kappa": 1.0, "kappa_bulk": 0.0,
    "delta": 0.0, "t_end": 2000.0, "rel_tol": 1e-8, "abs_tol": 1e-10,
    "sample_dt": 0.1, "max_step": 0.1, "ic": "zero", "ic_radius": 1.0,
    "realizations": 16, "seed": 0, "transient": 500.0, "window": 1500.0,
    "sigma_star": 0.05, "axis": "", "values": "", "w": 0.0, "configs": 128,
    "u_values": "", "w_values": "", "full_field": 0,
}


def load_config(path):
    """Flat 'key = value' file; returns a dict of typed values."""
    resolved = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _SETTINGS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        conv = _SETTINGS[key][0]
        try:
            resolved[key] = conv(value)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return resolved


def build_parser():
    parser = argparse.ArgumentParser(
        prog="photon-lattice",
        description="Transport simulator for boundary-driven nonlinear cavity chains")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("simulate", "sweep", "threshold", "threshold-scaling",
                 "stability", "disorder", "phase-diagram"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", default=None, help="key = value config file")
        cmd.add_argument("--out", required=True, help="output directory")
        for key, (conv, desc) in _SETTINGS.items():
            cmd.add_argument(f"--{key.replace('_', '-')}", dest=key,
                             type=conv, default=None, help=desc)
    return parser


def resolve(args):
    settings = dict(_DEFAULTS)
    if args.config:
        settings.update(load_config(args.config))
    for key in _SETTINGS:
        v = getattr(args, key, None)
        if v is not None:
            settings[key] = v
    return settings


def _params(settings, n_sites):
    return ChainParams(n_sites=n_sites, hopping=1.0,
                       nonlinearity=settings["u"], drive_amplitude=settings["p"],
                       detuning=settings["delta"], kappa_boundary=settings["kappa"],
                       kappa_bulk=settings["kappa_bulk"])


def _int_cfg(settings, store_full=False):
    return IntegratorConfig(t_end=settings["t_end"], rel_tol=settings["rel_tol"],
                            abs_tol=settings["abs_tol"],
                            max_step=settings["max_step"],
                            sample_interval=settings["sample_dt"],
                            store_full_field=store_full)


def _ens_cfg(settings):
    return EnsembleConfig(n_realizations=settings["realizations"],
                          master_seed=settings["seed"], ic_mode=settings["ic"],
                          ic_radius=settings["ic_radius"],
                          transient_time=settings["transient"],
                          window_time=settings["window"])


def _fit_row(fit):
    if fit is None:
        return {"model": None}
    return {"model": fit.model, "exponent_or_rate": fit.exponent_or_rate,
            "prefactor": fit.prefactor, "r_squared": fit.r_squared,
            "n_points": fit.n_points}


class Manifest:
    def __init__(self, command, settings):
        self.data = {
            "command": command,
            "parameters": settings,
            "master_seed": settings["seed"],
            "version": __version__,
            "started": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "outputs": [],
            "warnings": {"failed_realizations": 0, "not_converged_cells": 0},
        }

    def add_output(self, path):
        self.data["outputs"].append(str(path))

    def write(self, out_dir, extra=None):
        if extra:
            self.data.update(extra)
        self.data["finished"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        path = Path(out_dir) / "manifest.json"
        self.data["outputs"].append(str(path))
        with open(path, "w") as fh:
            json.dump(self.data, fh, indent=2, default=str)
            fh.write("\n")


def cmd_simulate(settings, out_dir, manifest):
    n = parse_grid(settings["sites"])
    if len(n) != 1:
        raise ValueError("simulate expects a single --sites value")
    params = _params(settings, n[0])
    int_cfg = _int_cfg(settings, store_full=bool(settings["full_field"]))
    ic = draw_initial_condition(settings["ic"], settings["seed"], 0,
                                params.n_sites, settings["ic_radius"])
    traj = integrate(params, ic, int_cfg)
    path = Path(out_dir) / "trajectory.csv"
    write_csv(path, ["t", "re_alpha_N", "im_alpha_N", "abs_alpha_N"],
              [(t, a.real, a.imag, abs(a))
               for t, a in zip(traj.sample_times, traj.alpha_last)])
    manifest.add_output(path)
    mean, var = window_stats(traj, settings["transient"], settings["window"])
    return {"window_mean_abs": mean, "window_sigma": float(np.sqrt(var))}


def _sweep_rows(result, settings):
    failed = dict(result.failures)
    rows = [(n, st.mean_abs, st.sigma, st.n_effective, st.n_failed)
            for n, st in result.entries]
    return rows, sum(st.n_failed for _, st in result.entries), failed


def cmd_sweep(settings, out_dir, manifest):
    grid = parse_grid(settings["sites"])
    result = length_sweep(_params(settings, grid[0]), grid,
                          _ens_cfg(settings), _int_cfg(settings))
    if not result.entries:
        raise AllRealizationsFailed(
            "every chain length in the sweep failed: "
            + "; ".join(f"N={n}: {msg}" for n, msg in result.failures))
    rows, n_failed, failures = _sweep_rows(result, settings)
    path = Path(out_dir) / "sweep.csv"
    write_csv(path, ["N", "mean_abs_alpha_N", "sigma", "n_realizations",
                     "n_failed"], rows)
    manifest.add_output(path)
    manifest.data["warnings"]["failed_realizations"] = n_failed
    return {"sweep_failures": failures}


def cmd_threshold(settings, out_dir, manifest):
    if settings["axis"]:
        return cmd_threshold_scaling(settings, out_dir, manifest)
    grid = parse_grid(settings["sites"])
    report = detect_threshold(_params(settings, grid[0]), grid,
                              _ens_cfg(settings), _int_cfg(settings),
                              settings["sigma_star"])
    path = Path(out_dir) / "sweep.csv"
    means = dict(report.means)
    write_csv(path, ["N", "mean_abs_alpha_N", "sigma", "n_realizations",
                     "n_failed"],
              [(n, means[n], s, settings["realizations"], 0)
               for n, s in report.sigmas])
    manifest.add_output(path)
    return {"threshold": {"n_t": report.n_t, "n_t_end": report.n_t_end,
                          "sigma_star": report.sigma_star,
                          "found": report.found}}


def cmd_threshold_scaling(settings, out_dir, manifest):
    axis = settings["axis"]
    values = parse_values(settings["values"])
    grid = parse_grid(settings["sites"])
    result = threshold_scaling(_params(settings, grid[0]), axis, values, grid,
                               _ens_cfg(settings), _int_cfg(settings),
                               settings["sigma_star"])
    path = Path(out_dir) / "scaling.csv"
    write_csv(path, ["value", "n_t", "n_t_end"],
              [(v, rep.n_t if rep.found else -1,
                rep.n_t_end if rep.n_t_end is not None else -1)
               for v, rep in result.points])
    manifest.add_output(path)
    return {"axis": axis, "fit": _fit_row(result.fit)}


def cmd_stability(settings, out_dir, manifest):
    grid = parse_grid(settings["sites"])
    entries = stability_scan(_params(settings, grid[0]), grid)
    path = Path(out_dir) / "stability.csv"
    write_csv(path, ["N", "max_im_E", "residual_norm", "newton_iterations"],
              [(n, spec.max_im, ss.residual_norm, ss.newton_iterations)
               for n, ss, spec in entries])
    manifest.add_output(path)
    manifest.data["warnings"]["not_converged_cells"] = len(grid) - len(entries)
    return {"n_converged": len(entries)}


def cmd_disorder(settings, out_dir, manifest):
    grid = parse_grid(settings["sites"])
    dis_cfg = DisorderConfig(width=settings["w"], n_configs=settings["configs"],
                             master_seed=settings["seed"])
    result = disordered_sweep(_params(settings, grid[0]), settings["w"], grid,
                              dis_cfg, _ens_cfg(settings), _int_cfg(settings))
    path = Path(out_dir) / "disorder.csv"
    write_csv(path, ["N", "mean_abs_alpha_N", "median_abs_alpha_N",
                     "logmean_abs_alpha_N", "sigma", "n_configs", "n_failed"],
              [(e.n, e.mean_abs, e.median_abs, e.logmean_abs, e.sigma,
                len(e.per_config), e.n_failed) for e in result.entries])
    manifest.add_output(path)
    label, pfit, efit = classify_decay(result.points())
    manifest.data["warnings"]["failed_realizations"] = sum(
        e.n_failed for e in result.entries)
    return {"classification": label, "power_fit": _fit_row(pfit),
            "exp_fit": _fit_row(efit)}


def cmd_phase_diagram(settings, out_dir, manifest):
    from .disorder import phase_scan
    u_values = parse_values(settings["u_values"])
    w_values = parse_values(settings["w_values"])
    grid = parse_grid(settings["sites"])
    dis_cfg = DisorderConfig(width=0.0, n_configs=settings["configs"],
                             master_seed=settings["seed"])
    cells = phase_scan(u_values, w_values, _params(settings, grid[0]), grid,
                       dis_cfg, _ens_cfg(settings), _int_cfg(settings))
    path = Path(out_dir) / "phase.csv"
    write_csv(path, ["U", "W", "classification", "power_exponent", "power_r2",
                     "exp_rate", "exp_r2", "n_points"],
              [(c.u, c.w, c.classification, c.power_fit.exponent_or_rate,
                c.power_fit.r_squared, c.exp_fit.exponent_or_rate,
                c.exp_fit.r_squared, c.n_points) for c in cells])
    manifest.add_output(path)
    return {"n_cells": len(cells)}


_COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "threshold": cmd_threshold,
    "threshold-scaling": cmd_threshold_scaling,
    "stability": cmd_stability,
    "disorder": cmd_disorder,
    "phase-diagram": cmd_phase_diagram,
}


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        settings = resolve(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = Manifest(args.command, settings)
    try:
        extra = _COMMANDS[args.command](settings, out_dir, manifest)
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except PhotonLatticeError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    manifest.write(out_dir, extra)
    return 0


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
