import numpy as np
import pytest

from photon_lattice import (ChainParams, DisorderConfig, EnsembleConfig,
                            IntegratorConfig, disordered_sweep, length_sweep,
                            phase_scan, sample_disorder)


class TestSampleDisorder:
    def test_zero_width_all_zeros(self):
        xi = sample_disorder(0.0, 42, 3, 50)
        assert xi.shape == (50,)
        assert np.all(xi == 0)

    def test_uniform_moments(self):
        # uniform on [-1, 1]: mean 0, variance 1/3
        xi = sample_disorder(1.0, 7, 0, 1_000_000)
        assert np.max(np.abs(xi)) <= 1.0
        assert abs(np.mean(xi)) < 0.005
        assert abs(np.var(xi) - 1.0 / 3.0) < 0.01 / 3.0

    def test_width_scales_support(self):
        xi = sample_disorder(5.0, 7, 0, 100_000)
        assert np.max(np.abs(xi)) <= 5.0
        assert np.max(np.abs(xi)) > 4.9

    def test_determinism_and_config_independence(self):
        a = sample_disorder(2.0, 9, 4, 30)
        b = sample_disorder(2.0, 9, 4, 30)
        c = sample_disorder(2.0, 9, 5, 30)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_negative_width_rejected(self):
        with pytest.raises(ValueError):
            sample_disorder(-1.0, 0, 0, 10)


def fast_cfgs(n_realizations=1, ic_mode="zero"):
    ens = EnsembleConfig(n_realizations=n_realizations, master_seed=5,
                         ic_mode=ic_mode, transient_time=100.0,
                         window_time=100.0)
    return ens, IntegratorConfig(t_end=200.0)


class TestDisorderedSweep:
    def test_zero_width_single_config_matches_clean_sweep(self):
        # W=0 with one config must be bit-identical to the clean length sweep
        base = ChainParams(n_sites=4, nonlinearity=0.4, drive_amplitude=3.0,
                           kappa_boundary=1.0)
        ens, icfg = fast_cfgs(n_realizations=2, ic_mode="random")
        grid = [4, 6, 8]
        dis = disordered_sweep(base, 0.0, grid,
                               DisorderConfig(width=0.0, n_configs=1,
                                              master_seed=5), ens, icfg)
        clean = length_sweep(base, grid, ens, icfg)
        for entry, (n, st) in zip(dis.entries, clean.entries):
            assert entry.n == n
            assert entry.mean_abs == st.mean_abs
            assert entry.sigma == st.sigma

    def test_determinism(self):
        base = ChainParams(n_sites=4, nonlinearity=0.4, drive_amplitude=3.0,
                           kappa_boundary=1.0)
        ens, icfg = fast_cfgs()
        dcfg = DisorderConfig(width=1.0, n_configs=3, master_seed=11)
        a = disordered_sweep(base, 1.0, [4, 6], dcfg, ens, icfg)
        b = disordered_sweep(base, 1.0, [4, 6], dcfg, ens, icfg)
        for ea, eb in zip(a.entries, b.entries):
            assert ea.mean_abs == eb.mean_abs
            assert ea.per_config == eb.per_config

    def test_per_config_spread_reflected_in_sigma(self):
        # strong disorder with zero per-realization variance: the pooled sigma
        # is exactly the across-config standard deviation of the means
        base = ChainParams(n_sites=4, drive_amplitude=3.0, kappa_boundary=1.0)
        ens = EnsembleConfig(n_realizations=1, master_seed=5, ic_mode="zero",
                             transient_time=500.0, window_time=200.0)
        icfg = IntegratorConfig(t_end=700.0)
        dcfg = DisorderConfig(width=2.0, n_configs=4, master_seed=1)
        res = disordered_sweep(base, 2.0, [4], dcfg, ens, icfg)
        entry = res.entries[0]
        means = [m for _, m, _ in entry.per_config]
        assert np.std(means) > 1e-6  # configs genuinely differ
        assert entry.sigma == pytest.approx(np.std(means), rel=1e-6)
        assert entry.mean_abs == pytest.approx(np.mean(means), rel=1e-12)
        assert entry.median_abs == pytest.approx(np.median(means), rel=1e-12)


class TestPhaseScan:
    def test_linear_chain_cells_classify_diffusive_or_better(self):
        # U=0, W=0: constant output field -> ballistic, reported as diffusive
        base = ChainParams(n_sites=5, drive_amplitude=3.0, kappa_boundary=1.0)
        ens = EnsembleConfig(n_realizations=1, master_seed=5, ic_mode="zero",
                             transient_time=900.0, window_time=100.0)
        icfg = IntegratorConfig(t_end=1000.0)
        dcfg = DisorderConfig(width=0.0, n_configs=1, master_seed=1)
        cells = phase_scan([0.0], [0.0], base, [5, 7, 9, 11], dcfg, ens, icfg)
        assert len(cells) == 1
        assert cells[0].u == 0.0 and cells[0].w == 0.0
        assert cells[0].classification == "diffusive"

    def test_strong_disorder_cell_insulating(self):
        # U=0 with strong disorder: localized linear chain, exponential tail
        base = ChainParams(n_sites=5, drive_amplitude=3.0, kappa_boundary=1.0)
        ens = EnsembleConfig(n_realizations=1, master_seed=5, ic_mode="zero",
                             transient_time=800.0, window_time=200.0)
        icfg = IntegratorConfig(t_end=1000.0)
        dcfg = DisorderConfig(width=5.0, n_configs=8, master_seed=2)
        cells = phase_scan([0.0], [5.0], base, [5, 10, 15, 20], dcfg, ens, icfg)
        assert cells[0].classification == "insulating"

    def test_grid_ordering_row_major(self):
        base = ChainParams(n_sites=4, drive_amplitude=1.0, kappa_boundary=1.0)
        ens, icfg = fast_cfgs()
        dcfg = DisorderConfig(width=0.0, n_configs=1, master_seed=1)
        cells = phase_scan([0.0, 0.5], [0.0, 1.0], base, [4, 6, 8, 10],
                           dcfg, ens, icfg)
        assert [(c.u, c.w) for c in cells] == [(0.0, 0.0), (0.0, 1.0),
                                               (0.5, 0.0), (0.5, 1.0)]
