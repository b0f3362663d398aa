import numpy as np
import pytest

from photon_lattice import (ChainParams, FieldState, IntegratorConfig,
                            integrate, intensity_balance_residual, step,
                            total_intensity, window_stats, zero_state)
from photon_lattice.errors import NonFinite


def single_site(p=5.0, kappa=1.0):
    return ChainParams(n_sites=1, drive_amplitude=p, kappa_boundary=kappa)


class TestLinearSingleSite:
    # closed form for U=0, delta=0: alpha(t) = -(2ip/kappa)(1 - exp(-kappa t/2))

    def test_matches_closed_form(self):
        params = single_site()
        cfg = IntegratorConfig(t_end=100.0)
        traj = integrate(params, zero_state(params), cfg)
        exact = -10j * (1.0 - np.exp(-traj.sample_times / 2.0))
        assert np.max(np.abs(traj.alpha_last - exact)) < 1e-6
        assert abs(abs(traj.alpha_last[-1]) - 10.0) < 1e-6

    def test_zero_drive_stays_zero(self):
        params = ChainParams(n_sites=4, nonlinearity=1.0, kappa_boundary=1.0)
        traj = integrate(params, zero_state(params), IntegratorConfig(t_end=10.0))
        assert np.all(traj.alpha_last == 0)


class TestStep:
    def test_zero_state_trivial(self):
        params = ChainParams(n_sites=3, nonlinearity=1.0, kappa_boundary=1.0)
        cfg = IntegratorConfig(t_end=1.0)
        new, err, h_next = step(params, zero_state(params), 0.01, cfg)
        assert np.all(new.amplitudes == 0)
        assert err == 0.0

    def test_order_of_convergence(self):
        # one step against the exact exponential; local error ~ h^5 so the
        # measured order under h-halving must be at least 4. Tolerance is set
        # loose so every trial step is accepted and y_new is the trial value.
        params = single_site()
        cfg = IntegratorConfig(t_end=1.0, rel_tol=1e3, abs_tol=1e3)
        ic = FieldState(np.array([-3.0j]), 0.0)

        def exact(t):
            return -10j + (ic.amplitudes[0] + 10j) * np.exp(-t / 2.0)

        errors = []
        hs = [0.4, 0.2, 0.1, 0.05]
        for h in hs:
            new, _, _ = step(params, ic, h, cfg)
            errors.append(abs(new.amplitudes[0] - exact(h)))
        orders = [np.log2(e0 / e1) for e0, e1 in zip(errors, errors[1:])]
        assert min(orders) >= 4.0

    def test_rejection_signals_smaller_step(self):
        params = ChainParams(n_sites=1, nonlinearity=1.0, drive_amplitude=5.0,
                             kappa_boundary=1.0)
        cfg = IntegratorConfig(t_end=1.0, rel_tol=1e-12, abs_tol=1e-14)
        ic = FieldState(np.array([1.0 + 0j]), 0.0)
        new, err, h_next = step(params, ic, 0.5, cfg)
        assert err > 1.0
        assert h_next < 0.5
        np.testing.assert_array_equal(new.amplitudes, ic.amplitudes)


class TestSelfConvergence:
    def test_tolerance_tightening(self):
        params = ChainParams(n_sites=8, nonlinearity=0.5, drive_amplitude=5.0,
                             kappa_boundary=1.0)
        finals = {}
        for rtol in (1e-6, 1e-10):
            cfg = IntegratorConfig(t_end=40.0, rel_tol=rtol, abs_tol=rtol * 1e-2)
            traj = integrate(params, zero_state(params), cfg)
            finals[rtol] = traj.alpha_last[-1]
        assert abs(finals[1e-6] - finals[1e-10]) <= 1e-5

    def test_monotone_approach_to_limit(self):
        params = ChainParams(n_sites=6, nonlinearity=0.3, drive_amplitude=5.0,
                             kappa_boundary=1.0)
        vals = []
        for rtol in (1e-5, 1e-7, 1e-9, 1e-11):
            cfg = IntegratorConfig(t_end=30.0, rel_tol=rtol, abs_tol=rtol * 1e-2)
            traj = integrate(params, zero_state(params), cfg)
            vals.append(traj.alpha_last[-1])
        errs = [abs(v - vals[-1]) for v in vals[:-1]]
        assert errs[0] >= errs[1] >= errs[2] or errs[0] < 1e-12


class TestTrajectoryContract:
    def test_uniform_grid(self):
        params = single_site()
        cfg = IntegratorConfig(t_end=5.0, sample_interval=0.1)
        traj = integrate(params, zero_state(params), cfg)
        dt = np.diff(traj.sample_times)
        assert np.all(np.abs(dt - 0.1) < 1e-12)
        assert traj.sample_times[-1] >= 5.0 - 1e-12

    def test_determinism_bit_identical(self):
        params = ChainParams(n_sites=20, nonlinearity=1.0, drive_amplitude=10.0,
                             kappa_boundary=1.0)
        cfg = IntegratorConfig(t_end=100.0)
        a = integrate(params, zero_state(params), cfg)
        b = integrate(params, zero_state(params), cfg)
        assert np.array_equal(a.alpha_last, b.alpha_last)

    def test_full_field_storage(self):
        params = ChainParams(n_sites=5, drive_amplitude=2.0, kappa_boundary=1.0)
        cfg = IntegratorConfig(t_end=2.0, store_full_field=True)
        traj = integrate(params, zero_state(params), cfg)
        assert traj.full_field.shape == (len(traj.sample_times), 5)
        np.testing.assert_array_equal(traj.full_field[:, -1], traj.alpha_last)

    def test_steady_state_reached_fig2a_regime(self):
        # N=20, U=J, p=10J: stable regime, late-window variance below 0.05
        params = ChainParams(n_sites=20, nonlinearity=1.0, drive_amplitude=10.0,
                             kappa_boundary=1.0)
        cfg = IntegratorConfig(t_end=1200.0)
        traj = integrate(params, zero_state(params), cfg)
        _, var = window_stats(traj, 700.0, 500.0)
        assert np.sqrt(var) < 0.05

    def test_balance_residual_along_trajectory(self):
        params = ChainParams(n_sites=8, nonlinearity=0.8, drive_amplitude=6.0,
                             kappa_boundary=1.0, kappa_bulk=0.1)
        cfg = IntegratorConfig(t_end=20.0, store_full_field=True)
        traj = integrate(params, zero_state(params), cfg)
        for row in traj.full_field[::17]:
            st = FieldState(row, 0.0)
            bound = 100.0 * cfg.rel_tol * max(1.0, total_intensity(st))
            assert abs(intensity_balance_residual(st, params)) <= bound


class TestFailures:
    def test_invalid_config(self):
        with pytest.raises(ValueError):
            IntegratorConfig(t_end=1.0, sample_interval=2.0)
        with pytest.raises(ValueError):
            IntegratorConfig(t_end=-1.0)

    def test_nonfinite_ic_rejected(self):
        params = single_site()
        bad = FieldState(np.array([np.nan + 0j]), 0.0)
        with pytest.raises(ValueError):
            integrate(params, bad, IntegratorConfig(t_end=1.0))

    def test_nonfinite_reports_last_good_time(self):
        # huge amplitude + strong Kerr overflows quickly
        params = ChainParams(n_sites=1, nonlinearity=1e150, kappa_boundary=0.0)
        ic = FieldState(np.array([1e150 + 0j]), 0.0)
        with pytest.raises(NonFinite) as exc_info:
            integrate(params, ic, IntegratorConfig(t_end=10.0))
        assert exc_info.value.t_last >= 0.0
