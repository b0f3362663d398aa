"""Chain parameterization, mean-field equations of motion, local observables.

All rates and energies are in units of the hopping J (time in units of 1/J);
J itself stays an explicit parameter so unit choices remain visible.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels


@dataclass
class ChainParams:
    """All model constants of one chain instance.

    ``site_detuning_shifts`` holds the per-site disorder offsets added to the
    detuning on every site (all zeros when disorder is absent).
    """

    n_sites: int
    hopping: float = 1.0
    nonlinearity: float = 0.0
    drive_amplitude: float = 0.0
    detuning: float = 0.0
    kappa_boundary: float = 0.0
    kappa_bulk: float = 0.0
    site_detuning_shifts: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        if self.site_detuning_shifts is None:
            self.site_detuning_shifts = np.zeros(self.n_sites)
        else:
            self.site_detuning_shifts = np.asarray(self.site_detuning_shifts, dtype=float)
        if self.site_detuning_shifts.shape != (self.n_sites,):
            raise ValueError("site_detuning_shifts must have length n_sites")
        if not self.hopping > 0:
            raise ValueError(f"hopping must be > 0, got {self.hopping}")
        for name in ("nonlinearity", "drive_amplitude", "kappa_boundary", "kappa_bulk"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
        if not np.isfinite(self.detuning):
            raise ValueError("detuning must be finite")
        if not np.all(np.isfinite(self.site_detuning_shifts)):
            raise ValueError("site_detuning_shifts must be finite")

    def with_sites(self, n_sites, shifts=None):
        """Copy with a new chain length (disorder shifts reset unless given)."""
        return replace(self, n_sites=n_sites, site_detuning_shifts=shifts)


@dataclass
class FieldState:
    """N complex site amplitudes plus the current time."""

    amplitudes: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1:
            raise ValueError("amplitudes must be a 1-D vector")

    def check(self, params):
        if self.amplitudes.shape[0] != params.n_sites:
            raise ValueError("state length does not match params.n_sites")
        if not np.all(np.isfinite(self.amplitudes.view(float))):
            raise ValueError("non-finite amplitude in state")


def zero_state(params):
    return FieldState(np.zeros(params.n_sites, dtype=np.complex128), 0.0)


def rhs(state, params):
    """Time derivative of the site amplitudes.

    Boundary sites lose photons at kappa_boundary, interior sites at
    kappa_bulk; the drive -i*p enters only on site 1. A single-site chain
    carries one boundary loss kappa/2 (not doubled) plus the drive.
    """
    state.check(params)
    out = np.empty(params.n_sites, dtype=np.complex128)
    _kernels.rhs_kernel(
        state.amplitudes, params.hopping, params.nonlinearity,
        params.drive_amplitude, params.detuning, params.kappa_boundary,
        params.kappa_bulk, params.site_detuning_shifts, out)
    return out


def total_intensity(state):
    """Sum of |alpha_i|^2."""
    a = state.amplitudes
    return float(np.sum(a.real ** 2 + a.imag ** 2))


def intensity_balance_residual(state, params):
    """Deviation of d/dt sum|alpha|^2 from the loss/drive bookkeeping.

    Hopping and Kerr terms conserve the total intensity, so
    2 Re<alpha, rhs(alpha)> must equal
    -kappa(|a_1|^2 + |a_N|^2) - kappa_bulk * sum_interior |a_i|^2
    - 2 p Im(a_1) for every state; the return value is algebraically zero.
    """
    a = state.amplitudes
    d = rhs(state, params)
    lhs = 2.0 * float(np.real(np.vdot(a, d)))
    n = params.n_sites
    if n == 1:
        boundary = abs(a[0]) ** 2
        interior = 0.0
    else:
        boundary = abs(a[0]) ** 2 + abs(a[-1]) ** 2
        interior = float(np.sum(np.abs(a[1:-1]) ** 2))
    expected = (-params.kappa_boundary * boundary - params.kappa_bulk * interior
                - 2.0 * params.drive_amplitude * float(a[0].imag))
    return lhs - expected


def photon_current(state, params, bond):
    """Bond current 2 J Im(conj(a_i) a_{i+1}) across bond i -> i+1 (1-based)."""
    if not 1 <= bond <= params.n_sites - 1:
        raise IndexError(f"bond must be in [1, {params.n_sites - 1}], got {bond}")
    a = state.amplitudes
    return 2.0 * params.hopping * float(np.imag(np.conj(a[bond - 1]) * a[bond]))
