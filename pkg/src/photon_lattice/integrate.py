"""Adaptive embedded Runge-Kutta 4(5) integration with uniform sampling.

Uses a Dormand-Prince pair with PI step control. Sampling is done by clipping
accepted steps onto the uniform grid, so recorded samples are exact solver
states (no interpolation error); the controller keeps its natural step size
across clips.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NonFinite, StepUnderflow
from .model import FieldState


@dataclass
class IntegratorConfig:
    t_end: float
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    initial_step: float = 1e-3
    max_step: float = 0.1
    sample_interval: float = 0.1
    store_full_field: bool = False

    def __post_init__(self):
        for name in ("t_end", "rel_tol", "abs_tol", "initial_step", "max_step",
                     "sample_interval"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.sample_interval > self.t_end:
            raise ValueError("sample_interval must not exceed t_end")


@dataclass
class Trajectory:
    sample_times: np.ndarray
    alpha_last: np.ndarray
    params: object
    ic_descriptor: str = ""
    full_field: np.ndarray = field(default=None)

    @property
    def abs_last(self):
        return np.abs(self.alpha_last)


def _n_samples(cfg):
    # terminal sample time must reach t_end; round up to the grid
    return int(np.ceil(cfg.t_end / cfg.sample_interval - 1e-9)) + 1


def integrate(params, ic, cfg, ic_descriptor=""):
    """Integrate the chain from ``ic`` and sample alpha_N on the uniform grid.

    Raises NonFinite on blow-up and StepUnderflow on step-size collapse, each
    carrying the last good time.
    """
    ic.check(params)
    n_samples = _n_samples(cfg)
    last, full, status, t_reached, _ = _kernels.integrate_kernel(
        ic.amplitudes.astype(np.complex128), params.hopping, params.nonlinearity,
        params.drive_amplitude, params.detuning, params.kappa_boundary,
        params.kappa_bulk, params.site_detuning_shifts,
        cfg.rel_tol, cfg.abs_tol, cfg.initial_step, cfg.max_step,
        cfg.sample_interval, n_samples, cfg.store_full_field)
    if status == _kernels.NON_FINITE:
        raise NonFinite("field became non-finite during integration", t_reached)
    if status == _kernels.STEP_UNDERFLOW:
        raise StepUnderflow("step size collapsed below 1e-14", t_reached)
    times = cfg.sample_interval * np.arange(n_samples)
    return Trajectory(times, last, params, ic_descriptor,
                      full_field=full if cfg.store_full_field else None)


def step(params, state, h, cfg):
    """Single trial Dormand-Prince step.

    Returns (new_state, error_estimate, h_next); rejection is signaled by
    h_next < h with the caller expected to retry from ``state``.
    """
    if not h > 0:
        raise ValueError("h must be > 0")
    state.check(params)
    k1 = np.empty(params.n_sites, dtype=np.complex128)
    _kernels.rhs_kernel(state.amplitudes, params.hopping, params.nonlinearity,
                        params.drive_amplitude, params.detuning,
                        params.kappa_boundary, params.kappa_bulk,
                        params.site_detuning_shifts, k1)
    y_new, _, enorm = _kernels.step_kernel(
        state.amplitudes, h, params.hopping, params.nonlinearity,
        params.drive_amplitude, params.detuning, params.kappa_boundary,
        params.kappa_bulk, params.site_detuning_shifts,
        cfg.rel_tol, cfg.abs_tol, k1)
    if not np.all(np.isfinite(y_new.view(float))) or not np.isfinite(enorm):
        raise NonFinite("field became non-finite in step", state.time)
    if enorm <= 1.0:
        fac = min(5.0, max(0.2, 0.9 * max(enorm, 1e-10) ** -0.2))
        return FieldState(y_new, state.time + h), enorm, h * fac
    fac = max(0.1, 0.9 * enorm ** -0.2)
    return FieldState(state.amplitudes.copy(), state.time), enorm, h * fac
