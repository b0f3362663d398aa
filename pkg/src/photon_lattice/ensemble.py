"""Randomized initial conditions, window/ensemble averaging, quadratures.

The instability statistic is Sigma = sqrt(<|a_N|^2> - <|a_N|>^2) with the
moments pooled over all post-transient samples of all realizations.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import parallel
from .errors import AllRealizationsFailed, IntegrationError, WindowTooShort
from .integrate import integrate
from .model import FieldState
from .seeding import REALIZATION_TAG, stream


@dataclass
class EnsembleConfig:
    n_realizations: int = 16
    master_seed: int = 0
    ic_mode: str = "random"  # "zero" | "random"
    ic_radius: float = 1.0
    transient_time: float = 500.0
    window_time: float = 1500.0

    def __post_init__(self):
        if self.n_realizations < 1:
            raise ValueError("n_realizations must be >= 1")
        if self.ic_mode not in ("zero", "random"):
            raise ValueError(f"unknown ic_mode {self.ic_mode!r}")
        if not self.window_time > 0:
            raise ValueError("window_time must be > 0")


@dataclass
class EnsembleStats:
    mean_abs: float
    sigma: float
    per_realization: list  # (seed_index, time_mean, time_variance)
    n_effective: int
    n_failed: int = 0


def draw_initial_condition(mode, master_seed, index, n_sites, radius=1.0):
    """Initial field: zeros, or i.i.d. uniform draws on the complex disc.

    The stream is keyed by (master_seed, realization index), so the same pair
    always reproduces the same state regardless of draw order elsewhere.
    """
    if mode == "zero":
        return FieldState(np.zeros(n_sites, dtype=np.complex128), 0.0)
    if mode != "random":
        raise ValueError(f"unknown ic mode {mode!r}")
    rng = stream(master_seed, REALIZATION_TAG, index)
    r = radius * np.sqrt(rng.random(n_sites))
    phi = 2.0 * np.pi * rng.random(n_sites)
    return FieldState(r * np.exp(1j * phi), 0.0)


def window_indices(sample_times, transient_time, window_time):
    """Indices of samples with t in (transient, transient + window]."""
    t_hi = transient_time + window_time
    if sample_times[-1] < t_hi - 1e-9:
        raise WindowTooShort(
            f"trajectory ends at t={sample_times[-1]:g}, window needs t={t_hi:g}")
    mask = (sample_times > transient_time + 1e-12) & (sample_times <= t_hi + 1e-9)
    return np.nonzero(mask)[0]


def window_stats(traj, transient_time, window_time):
    """Time mean and variance of |alpha_N| over the averaging window."""
    idx = window_indices(traj.sample_times, transient_time, window_time)
    x = np.abs(traj.alpha_last[idx])
    return float(np.mean(x)), float(np.var(x))


def _run_realization(args):
    params, ens_cfg, int_cfg, index = args
    ic = draw_initial_condition(ens_cfg.ic_mode, ens_cfg.master_seed, index,
                                params.n_sites, ens_cfg.ic_radius)
    traj = integrate(params, ic, int_cfg,
                     ic_descriptor=f"{ens_cfg.ic_mode}:{ens_cfg.master_seed}:{index}")
    idx = window_indices(traj.sample_times, ens_cfg.transient_time,
                         ens_cfg.window_time)
    x = np.abs(traj.alpha_last[idx])
    return index, float(np.mean(x)), float(np.var(x)), x.size


def ensemble_stats(params, ens_cfg, int_cfg, seed_offset=0):
    """Pooled window statistics over independent randomized realizations.

    Realizations that blow up (NonFinite/StepUnderflow) are excluded and
    counted, never retried. ``seed_offset`` shifts the realization indices so
    nested studies (disorder configs) get disjoint streams.
    """
    required = ens_cfg.transient_time + ens_cfg.window_time
    if int_cfg.t_end < required - 1e-9:
        raise WindowTooShort(
            f"int_cfg.t_end={int_cfg.t_end:g} < transient+window={required:g}")
    jobs = [(params, ens_cfg, int_cfg, seed_offset + k)
            for k in range(ens_cfg.n_realizations)]
    results = parallel.pmap(_run_realization, jobs)

    per_realization = []
    counts = []
    n_failed = 0
    for res in results:
        if isinstance(res, IntegrationError):
            n_failed += 1
            continue
        if isinstance(res, Exception):
            raise res
        index, tm, tv, m = res
        per_realization.append((index, tm, tv))
        counts.append(m)
    if not per_realization:
        raise AllRealizationsFailed(
            f"all {ens_cfg.n_realizations} realizations failed")
    if n_failed:
        warnings.warn(f"{n_failed} of {ens_cfg.n_realizations} realizations "
                      "ended non-finite and were excluded", stacklevel=2)
    # pool by the law of total variance (avoids E[x^2]-E[x]^2 cancellation)
    weights = np.array(counts, dtype=float)
    means = np.array([tm for _, tm, _ in per_realization])
    variances = np.array([tv for _, _, tv in per_realization])
    count = weights.sum()
    mean = float(np.sum(weights * means) / count)
    var = float(np.sum(weights * (variances + (means - mean) ** 2)) / count)
    return EnsembleStats(mean_abs=mean, sigma=math.sqrt(var),
                         per_realization=per_realization,
                         n_effective=len(per_realization), n_failed=n_failed)


def quadrature_series(traj):
    """Field quadratures of the last site: X = 2 Re alpha_N, P = 2 Im alpha_N."""
    return (traj.sample_times,
            2.0 * traj.alpha_last.real,
            2.0 * traj.alpha_last.imag)


def quadrature_histogram(traj, bins, transient_time=0.0):
    """2-D histogram of post-transient (X, P) samples on a uniform grid.

    Returns (counts, x_edges, p_edges); total count equals the number of
    post-transient samples.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    mask = traj.sample_times > transient_time + 1e-12
    x = 2.0 * traj.alpha_last.real[mask]
    p = 2.0 * traj.alpha_last.imag[mask]
    # widen degenerate ranges so a fixed point still lands inside the grid
    def _edges(v):
        lo, hi = float(np.min(v)), float(np.max(v))
        if hi - lo < 1e-12:
            pad = max(1e-6, abs(hi) * 1e-9)
            lo, hi = lo - pad, hi + pad
        return np.linspace(lo, hi, bins + 1)

    x_edges, p_edges = _edges(x), _edges(p)
    counts, _, _ = np.histogram2d(x, p, bins=[x_edges, p_edges])
    return counts, x_edges, p_edges
