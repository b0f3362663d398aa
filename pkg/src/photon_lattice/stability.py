"""Fixed points by Newton continuation and linear stability spectra.

The linearization of the flow around a fixed point alpha_s is
d(da)/dt = M da + K conj(da) with M the holomorphic and K the
anti-holomorphic block. With the mode ansatz
da_j(t) = exp(-iEt) U_j + exp(+i conj(E) t) conj(V_j) the eigenproblem reads
A (U; V) = E (U; V) with A = [[iM, iK], [i conj(K), i conj(M)]]; a mode grows
like exp(Im(E) t), so max Im(E) equals the spectral abscissa of the real-form
flow Jacobian.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import EigenFailure, NotConvergedInput
from .model import FieldState, rhs

MAX_NEWTON_ITER = 200


@dataclass
class SteadyState:
    alpha_s: np.ndarray
    residual_norm: float
    params: object
    converged: bool
    newton_iterations: int


@dataclass
class BdgSpectrum:
    eigenvalues: np.ndarray
    max_im: float
    matrix_dim: int


def _loss_vector(params):
    n = params.n_sites
    loss = np.full(n, params.kappa_bulk)
    loss[0] = params.kappa_boundary
    loss[-1] = params.kappa_boundary
    return loss


def linearization_blocks(params, alpha):
    """Complex blocks M = d(rhs)/d(alpha), K = d(rhs)/d(conj(alpha))."""
    n = params.n_sites
    u = params.nonlinearity
    loss = _loss_vector(params)
    det = params.detuning + params.site_detuning_shifts
    m = np.zeros((n, n), dtype=np.complex128)
    absq = np.abs(alpha) ** 2
    np.fill_diagonal(m, -0.5 * loss - 1j * det - 4j * u * absq)
    off = -1j * params.hopping
    for i in range(n - 1):
        m[i, i + 1] = off
        m[i + 1, i] = off
    k = np.diag(-2j * u * alpha ** 2)
    return m, k


def real_jacobian(params, alpha):
    """Jacobian of the flow in (Re alpha, Im alpha) coordinates."""
    m, k = linearization_blocks(params, alpha)
    dx = m + k           # d f / d x
    dy = 1j * (m - k)    # d f / d y
    n = params.n_sites
    jac = np.empty((2 * n, 2 * n))
    jac[:n, :n] = dx.real
    jac[:n, n:] = dy.real
    jac[n:, :n] = dx.imag
    jac[n:, n:] = dy.imag
    return jac


def _residual(params, alpha):
    return rhs(FieldState(alpha, 0.0), params)


def _newton(params, alpha0, tol, max_iter=MAX_NEWTON_ITER):
    """Damped Newton on the 2N real equations; returns (alpha, resid, iters, ok)."""
    n = params.n_sites
    alpha = alpha0.astype(np.complex128).copy()
    f = _residual(params, alpha)
    fnorm = float(np.max(np.abs(f)))
    iters = 0
    while fnorm > tol and iters < max_iter:
        jac = real_jacobian(params, alpha)
        fr = np.concatenate([f.real, f.imag])
        try:
            delta = np.linalg.solve(jac, -fr)
        except np.linalg.LinAlgError:
            break
        step = delta[:n] + 1j * delta[n:]
        lam = 1.0
        while lam >= 1e-6:
            trial = alpha + lam * step
            ft = _residual(params, trial)
            ftn = float(np.max(np.abs(ft)))
            if ftn < fnorm * (1.0 - 1e-4 * lam) or ftn <= tol:
                alpha, f, fnorm = trial, ft, ftn
                break
            lam *= 0.5
        else:
            break  # line search stalled
        iters += 1
    return alpha, fnorm, iters, fnorm <= tol


def linear_steady_state(params):
    """Steady state of the U=0 chain by a direct complex linear solve."""
    if params.nonlinearity != 0:
        raise ValueError("linear_steady_state requires U = 0")
    m, _ = linearization_blocks(params, np.zeros(params.n_sites, np.complex128))
    drive = np.zeros(params.n_sites, dtype=np.complex128)
    drive[0] = -1j * params.drive_amplitude
    return np.linalg.solve(m, -drive)


def _relaxed_guess(params, t_chunk=400.0, max_chunks=8, resid_goal=0.05):
    """Seed Newton by integrating toward the attractor from the zero field.

    Runs in chunks until the flow residual is small enough for Newton's
    basin; a trajectory that never settles (limit cycle, chaos) simply
    returns its last state and Newton is allowed to fail on it.
    """
    from .integrate import IntegratorConfig, integrate  # local: avoid cycle
    alpha = np.zeros(params.n_sites, dtype=np.complex128)
    scale = max(1.0, params.drive_amplitude / params.hopping)
    cfg = IntegratorConfig(t_end=t_chunk, sample_interval=t_chunk,
                           store_full_field=True)
    for _ in range(max_chunks):
        try:
            traj = integrate(params, FieldState(alpha, 0.0), cfg)
        except Exception:  # noqa: BLE001 - blow-up: hand Newton what we have
            break
        alpha = traj.full_field[-1]
        if float(np.max(np.abs(_residual(params, alpha)))) < resid_goal * scale:
            break
    return alpha


def _ramped_newton(params, tol):
    """Drive-amplitude continuation: ramp p from 0 in 10 Newton stages."""
    alpha = np.zeros(params.n_sites, dtype=np.complex128)
    p_target = params.drive_amplitude
    total_iters = 0
    ok, resid = True, 0.0
    for p_k in np.linspace(p_target / 10.0, p_target, 10):
        stage = replace(params, drive_amplitude=p_k)
        alpha, resid, iters, ok = _newton(stage, alpha, tol)
        total_iters += iters
        if not ok:
            break
    return alpha, resid, total_iters, ok


def solve_steady_state(params, guess=None, tol=None):
    """Newton fixed point of the mean-field flow.

    Without a guess, Newton is seeded by relaxing the zero field along the
    flow (with a drive-ramp continuation as fallback). The converged flag is
    false when the residual never reaches tolerance; the best iterate is
    still returned - expected near and beyond the instability threshold.
    """
    p_target = params.drive_amplitude
    scale = max(1.0, p_target / params.hopping)
    if tol is None:
        tol = 1e-11 * scale
    if guess is not None:
        alpha, resid, total_iters, ok = _newton(
            params, np.asarray(guess, np.complex128), tol)
    elif p_target == 0.0:
        alpha = np.zeros(params.n_sites, dtype=np.complex128)
        resid, total_iters, ok = 0.0, 0, True
    else:
        alpha, resid, total_iters, ok = _newton(params, _relaxed_guess(params), tol)
        if not ok:
            alpha2, resid2, iters2, ok = _ramped_newton(params, tol)
            total_iters += iters2
            if resid2 < resid:
                alpha, resid = alpha2, resid2
    converged = ok and resid <= 1e-10 * scale
    return SteadyState(alpha, resid, params, converged, total_iters)


def assemble_bdg(params, ss):
    """2N x 2N Bogoliubov matrix at the fixed point, (U_1,V_1,...,U_N,V_N) order."""
    if not ss.converged:
        raise NotConvergedInput("steady state did not converge")
    m, k = linearization_blocks(params, ss.alpha_s)
    n = params.n_sites
    a = np.empty((2 * n, 2 * n), dtype=np.complex128)
    a[:n, :n] = 1j * m
    a[:n, n:] = 1j * k
    a[n:, :n] = 1j * np.conj(k)
    a[n:, n:] = 1j * np.conj(m)
    # interleave (U_1..U_N, V_1..V_N) -> (U_1, V_1, ..., U_N, V_N)
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n) + n
    return a[np.ix_(perm, perm)]


def growth_rate(matrix):
    """All eigenvalues of the Bogoliubov matrix and their largest Im part."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    try:
        ev = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return BdgSpectrum(ev, float(np.max(ev.imag)), matrix.shape[0])


def stability_scan(base_params, n_grid, stop_on_failure=True):
    """Fixed point + spectrum per chain length, continued in N.

    The previous solution padded with zero sites seeds the next Newton solve.
    Entries stop at the first Newton failure (expected near the instability
    threshold) unless stop_on_failure is false, in which case failed lengths
    are skipped.
    """
    n_grid = list(n_grid)
    entries = []
    prev = None
    for n in n_grid:
        params = replace(base_params, n_sites=n, site_detuning_shifts=None)
        if prev is None:
            guess = None
        else:
            guess = np.zeros(n, dtype=np.complex128)
            guess[:min(n, prev.shape[0])] = prev[:min(n, prev.shape[0])]
        ss = solve_steady_state(params, guess=guess)
        if not ss.converged and guess is not None:
            ss = solve_steady_state(params)  # retry with the drive ramp
        if not ss.converged:
            if stop_on_failure:
                break
            continue
        prev = ss.alpha_s
        entries.append((n, ss, growth_rate(assemble_bdg(params, ss))))
    return entries
