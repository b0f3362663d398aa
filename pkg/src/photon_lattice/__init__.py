"""Transport simulator for boundary-driven dissipative nonlinear cavity chains."""

__version__ = "0.1.0"

from .model import ChainParams, FieldState, rhs, total_intensity  # noqa: F401
from .model import intensity_balance_residual, photon_current, zero_state  # noqa: F401
from .integrate import IntegratorConfig, Trajectory, integrate, step  # noqa: F401
from .ensemble import (EnsembleConfig, EnsembleStats, draw_initial_condition,  # noqa: F401
                       ensemble_stats, quadrature_histogram, quadrature_series,
                       window_stats)
from .scaling import (ClassifierConfig, ScalingFit, ThresholdReport,  # noqa: F401
                      classify_decay, detect_threshold, fit_decay,
                      length_sweep, threshold_scaling)
from .stability import (BdgSpectrum, SteadyState, assemble_bdg, growth_rate,  # noqa: F401
                        linear_steady_state, linearization_blocks,
                        real_jacobian, solve_steady_state, stability_scan)
from .disorder import (DisorderConfig, PhaseCell, disordered_sweep,  # noqa: F401
                       phase_scan, sample_disorder)
