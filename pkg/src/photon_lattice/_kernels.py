"""Numba kernels: mean-field right-hand side and the adaptive RK45 loop.

Everything here works on plain float/complex arrays so the jitted code can be
called from worker threads (nogil) without touching Python objects.
"""

import numpy as np
from numba import njit

# Dormand-Prince 4(5) tableau (FSAL).
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# 5th-order solution minus embedded 4th-order solution.
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

# Status codes returned by integrate_kernel.
OK = 0
STEP_UNDERFLOW = 1
NON_FINITE = 2

H_FLOOR = 1e-14


@njit(cache=True, nogil=True)
def rhs_kernel(alpha, J, U, p, delta, kappa, kappa_bulk, xi, out):
    """d(alpha)/dt of the boundary-driven chain, written into ``out``."""
    n = alpha.shape[0]
    if n == 1:
        a = alpha[0]
        n0 = a.real * a.real + a.imag * a.imag
        out[0] = -(0.5 * kappa + 1j * (delta + xi[0])) * a - 2j * U * n0 * a - 1j * p
        return
    a = alpha[0]
    n0 = a.real * a.real + a.imag * a.imag
    out[0] = (-(0.5 * kappa + 1j * (delta + xi[0])) * a - 1j * J * alpha[1]
              - 2j * U * n0 * a - 1j * p)
    for i in range(1, n - 1):
        a = alpha[i]
        ni = a.real * a.real + a.imag * a.imag
        out[i] = (-0.5 * kappa_bulk * a - 1j * (delta + xi[i]) * a
                  - 1j * J * (alpha[i + 1] + alpha[i - 1]) - 2j * U * ni * a)
    a = alpha[n - 1]
    nn = a.real * a.real + a.imag * a.imag
    out[n - 1] = (-(0.5 * kappa + 1j * (delta + xi[n - 1])) * a - 1j * J * alpha[n - 2]
                  - 2j * U * nn * a)


@njit(cache=True, nogil=True)
def _error_norm(err, y0, y1, rel_tol, abs_tol):
    n = err.shape[0]
    acc = 0.0
    for i in range(n):
        sc = abs_tol + rel_tol * max(abs(y0[i]), abs(y1[i]))
        q = abs(err[i]) / sc
        acc += q * q
    return np.sqrt(acc / n)


@njit(cache=True, nogil=True)
def step_kernel(alpha, h, J, U, p, delta, kappa, kappa_bulk, xi,
                rel_tol, abs_tol, k1):
    """One trial Dormand-Prince step from ``alpha`` with stage-1 slope ``k1``.

    Returns (y_new, k7, error_norm). The caller decides acceptance; k7 is the
    FSAL slope at y_new, reusable as the next k1 when the step is accepted.
    """
    n = alpha.shape[0]
    y = np.empty(n, np.complex128)
    k2 = np.empty(n, np.complex128)
    k3 = np.empty(n, np.complex128)
    k4 = np.empty(n, np.complex128)
    k5 = np.empty(n, np.complex128)
    k6 = np.empty(n, np.complex128)
    k7 = np.empty(n, np.complex128)

    for i in range(n):
        y[i] = alpha[i] + h * _A21 * k1[i]
    rhs_kernel(y, J, U, p, delta, kappa, kappa_bulk, xi, k2)
    for i in range(n):
        y[i] = alpha[i] + h * (_A31 * k1[i] + _A32 * k2[i])
    rhs_kernel(y, J, U, p, delta, kappa, kappa_bulk, xi, k3)
    for i in range(n):
        y[i] = alpha[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
    rhs_kernel(y, J, U, p, delta, kappa, kappa_bulk, xi, k4)
    for i in range(n):
        y[i] = alpha[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
    rhs_kernel(y, J, U, p, delta, kappa, kappa_bulk, xi, k5)
    for i in range(n):
        y[i] = alpha[i] + h * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                               + _A64 * k4[i] + _A65 * k5[i])
    rhs_kernel(y, J, U, p, delta, kappa, kappa_bulk, xi, k6)
    y_new = np.empty(n, np.complex128)
    for i in range(n):
        y_new[i] = alpha[i] + h * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                   + _B5 * k5[i] + _B6 * k6[i])
    rhs_kernel(y_new, J, U, p, delta, kappa, kappa_bulk, xi, k7)
    err = np.empty(n, np.complex128)
    for i in range(n):
        err[i] = h * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                      + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
    enorm = _error_norm(err, alpha, y_new, rel_tol, abs_tol)
    return y_new, k7, enorm


@njit(cache=True, nogil=True)
def integrate_kernel(alpha0, J, U, p, delta, kappa, kappa_bulk, xi,
                     rel_tol, abs_tol, h0, max_step, sample_dt, n_samples,
                     store_full):
    """Integrate from t=0 over the uniform sample grid t_k = k*sample_dt.

    Steps are clipped to land exactly on sample points, so recorded samples
    carry no interpolation error. Returns
    (last_site_samples, full_field_or_dummy, status, t_reached, n_recorded).
    """
    n = alpha0.shape[0]
    last = np.empty(n_samples, np.complex128)
    if store_full:
        full = np.empty((n_samples, n), np.complex128)
    else:
        full = np.empty((1, n), np.complex128)

    alpha = alpha0.copy()
    t = 0.0
    last[0] = alpha[n - 1]
    if store_full:
        full[0, :] = alpha
    recorded = 1

    k1 = np.empty(n, np.complex128)
    rhs_kernel(alpha, J, U, p, delta, kappa, kappa_bulk, xi, k1)
    h_prop = min(h0, max_step)
    err_prev = 1e-4
    t_end = sample_dt * (n_samples - 1)

    while recorded < n_samples:
        t_next = sample_dt * recorded
        if h_prop > max_step:
            h_prop = max_step
        h = h_prop
        hit_sample = False
        if t + h >= t_next - 1e-14 * max(1.0, abs(t_next)):
            h = t_next - t
            hit_sample = True
        if h < H_FLOOR:
            return last, full, STEP_UNDERFLOW, t, recorded

        y_new, k7, enorm = step_kernel(alpha, h, J, U, p, delta, kappa, kappa_bulk,
                                       xi, rel_tol, abs_tol, k1)

        finite = True
        for i in range(n):
            v = y_new[i]
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                finite = False
                break
        if not finite or not np.isfinite(enorm):
            return last, full, NON_FINITE, t, recorded

        if enorm <= 1.0:
            t = t + h
            alpha = y_new
            k1 = k7
            if hit_sample:
                t = t_next  # kill accumulated roundoff on the grid
                last[recorded] = alpha[n - 1]
                if store_full:
                    full[recorded, :] = alpha
                recorded += 1
            # PI step-size controller
            e = max(enorm, 1e-10)
            fac = 0.9 * e ** (-0.7 / 5.0) * err_prev ** (0.4 / 5.0)
            if fac > 5.0:
                fac = 5.0
            elif fac < 0.2:
                fac = 0.2
            if hit_sample:
                # step was clipped to the grid: never let the clip shrink the
                # controller's natural step
                h_prop = max(h_prop, h * fac)
            else:
                h_prop = h * fac
            err_prev = e
        else:
            fac = 0.9 * enorm ** (-0.2)
            if fac < 0.1:
                fac = 0.1
            h_prop = h * fac

    return last, full, OK, t_end, recorded
