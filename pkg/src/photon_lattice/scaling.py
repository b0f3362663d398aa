"""Chain-length sweeps, instability threshold detection, decay-law fits.

The threshold length N_t is the first grid point where the pooled variance
Sigma rises above sigma_star (default 0.05); under bulk loss the scan also
looks for the collapse point N_t_end where Sigma falls back below and stays
below for two consecutive grid points.
"""

from dataclasses import dataclass, replace

import numpy as np

from .ensemble import ensemble_stats
from .errors import DegenerateData

SIGMA_STAR = 0.05


@dataclass
class ClassifierConfig:
    r2_min: float = 0.9
    r2_margin: float = 0.05
    ballistic_exponent: float = 0.05


@dataclass
class ScalingFit:
    model: str  # "power" | "exponential"
    exponent_or_rate: float  # b in A*N^b, or c in A*exp(-c*N)
    prefactor: float
    r_squared: float
    n_points: int

    def predict(self, n):
        n = np.asarray(n, dtype=float)
        if self.model == "power":
            return self.prefactor * n ** self.exponent_or_rate
        return self.prefactor * np.exp(-self.exponent_or_rate * n)


@dataclass
class LengthSweepResult:
    entries: list  # (N, EnsembleStats)
    params: object
    grid: list
    failures: list  # (N, error message)

    def points(self):
        return [(n, st.mean_abs) for n, st in self.entries]

    def sigmas(self):
        return [(n, st.sigma) for n, st in self.entries]


@dataclass
class ThresholdReport:
    n_t: int  # None if no crossing in range
    n_t_end: int  # None unless a sustained collapse was found
    sigma_star: float
    grid: list
    sigmas: list  # (N, Sigma) actually evaluated
    means: list = None  # (N, mean |alpha_N|) for the same points

    @property
    def found(self):
        return self.n_t is not None


def _resize(base_params, n):
    return replace(base_params, n_sites=n, site_detuning_shifts=None)


def length_sweep(base_params, n_grid, ens_cfg, int_cfg):
    """Ensemble statistics for each chain length in the (increasing) grid."""
    n_grid = list(n_grid)
    if not n_grid or any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("N grid must be nonempty and strictly increasing")
    entries, failures = [], []
    for n in n_grid:
        try:
            entries.append((n, ensemble_stats(_resize(base_params, n),
                                              ens_cfg, int_cfg)))
        except Exception as exc:  # noqa: BLE001 - sweep continues per spec
            failures.append((n, str(exc)))
    return LengthSweepResult(entries, base_params, n_grid, failures)


def threshold_from_sigmas(sigmas, sigma_star=SIGMA_STAR, detect_collapse=False):
    """Pure threshold rule on precomputed (N, Sigma) pairs.

    n_t_end needs two consecutive sub-threshold points after n_t and reports
    the first of the pair.
    """
    n_t = None
    n_t_end = None
    prev_below = None
    for n, sig in sigmas:
        if n_t is None:
            if sig > sigma_star:
                n_t = n
        elif detect_collapse and n_t_end is None:
            if sig < sigma_star:
                if prev_below is not None:
                    n_t_end = prev_below
                else:
                    prev_below = n
            else:
                prev_below = None
    return n_t, n_t_end


def detect_threshold(base_params, n_scan, ens_cfg, int_cfg, sigma_star=SIGMA_STAR):
    """Scan increasing N for the first Sigma crossing.

    Stops at the crossing unless kappa_bulk > 0, in which case the scan
    continues to look for the collapse N_t_end. A missing crossing is
    reported via n_t=None, not raised.
    """
    n_scan = list(n_scan)
    detect_collapse = base_params.kappa_bulk > 0
    sigmas, means = [], []
    for n in n_scan:
        st = ensemble_stats(_resize(base_params, n), ens_cfg, int_cfg)
        sigmas.append((n, st.sigma))
        means.append((n, st.mean_abs))
        n_t, n_t_end = threshold_from_sigmas(sigmas, sigma_star, detect_collapse)
        if n_t is not None and not detect_collapse:
            break
        if n_t_end is not None:
            break
    n_t, n_t_end = threshold_from_sigmas(sigmas, sigma_star, detect_collapse)
    return ThresholdReport(n_t, n_t_end, sigma_star, n_scan, sigmas, means)


def fit_decay(points, model):
    """Least-squares fit in linearized coordinates.

    power: log y vs log N; exponential: log y vs N. r^2 is reported in the
    same linearized coordinates. Constant data fits exactly (r^2 = 1).
    """
    if model not in ("power", "exponential"):
        raise ValueError(f"unknown model {model!r}")
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if any(y <= 0 for _, y in pts):
        raise ValueError("y values must be positive")
    n = np.array([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    x = np.log(n) if model == "power" else n
    if np.ptp(x) < 1e-12:
        raise DegenerateData("zero variance in regressor")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot < 1e-30:
        r2 = 1.0 if ss_res < 1e-30 else 0.0
    else:
        r2 = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    if model == "power":
        return ScalingFit("power", float(slope), float(np.exp(intercept)), r2, len(pts))
    return ScalingFit("exponential", float(-slope), float(np.exp(intercept)), r2, len(pts))


def classify_decay(points, cfg=ClassifierConfig()):
    """Classify (N, y) data as ballistic / power_law / exponential / inconclusive.

    Returns (label, power_fit, exponential_fit). Ballistic wins when the
    power exponent is negligible; otherwise the better model must beat the
    other by the r^2 margin and clear the absolute r^2 floor.
    """
    pts = list(points)
    if len(pts) < 4:
        raise ValueError("need at least 4 points")
    ns = sorted(float(n) for n, _ in pts)
    if ns[-1] < 2.0 * ns[0]:
        raise ValueError("N range must span at least a factor of 2")
    pfit = fit_decay(pts, "power")
    efit = fit_decay(pts, "exponential")
    if abs(pfit.exponent_or_rate) < cfg.ballistic_exponent:
        return "ballistic", pfit, efit
    if pfit.r_squared >= efit.r_squared + cfg.r2_margin and pfit.r_squared > cfg.r2_min:
        return "power_law", pfit, efit
    if efit.r_squared >= pfit.r_squared + cfg.r2_margin and efit.r_squared > cfg.r2_min:
        return "exponential", pfit, efit
    return "inconclusive", pfit, efit


@dataclass
class ThresholdScalingResult:
    axis: str
    points: list  # (value, ThresholdReport)
    fit: ScalingFit  # power-law fit of N_t vs axis value (None if < 3 points)


_AXIS_FIELD = {"u": "nonlinearity", "p": "drive_amplitude",
               "kappa_bulk": "kappa_bulk"}


def threshold_scaling(base_params, axis, values, n_scan, ens_cfg, int_cfg,
                      sigma_star=SIGMA_STAR):
    """Threshold detection along one parameter axis plus an N_t power fit.

    The fit is only attempted on the u/p axes (the bulk-loss axis has no
    power-law claim) and needs >= 3 found thresholds.
    """
    if axis not in _AXIS_FIELD:
        raise ValueError(f"axis must be one of {sorted(_AXIS_FIELD)}")
    values = list(values)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("axis values must be strictly increasing")
    points = []
    for v in values:
        params = replace(base_params, **{_AXIS_FIELD[axis]: v})
        points.append((v, detect_threshold(params, n_scan, ens_cfg, int_cfg,
                                           sigma_star)))
    fit = None
    if axis in ("u", "p"):
        found = [(v, rep.n_t) for v, rep in points if rep.found]
        if len(found) >= 3:
            fit = fit_decay(found, "power")
    return ThresholdScalingResult(axis, points, fit)
