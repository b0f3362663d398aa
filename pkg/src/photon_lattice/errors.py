"""Exception types shared across the package."""


class PhotonLatticeError(Exception):
    """Base class for all package errors."""


class IntegrationError(PhotonLatticeError):
    """Base class for time-integration failures. Carries the last good time."""

    def __init__(self, message, t_last):
        super().__init__(f"{message} (last good time t={t_last:g})")
        self.t_last = t_last


class StepUnderflow(IntegrationError):
    """Step size collapsed below the hard floor; the ODE is stiff or diverging."""


class NonFinite(IntegrationError):
    """NaN/Inf appeared in the field; the trajectory blew up."""


class WindowTooShort(PhotonLatticeError):
    """Trajectory does not cover the requested averaging window."""


class AllRealizationsFailed(PhotonLatticeError):
    """Every realization of an ensemble ended in an integration failure."""


class NoThresholdInRange(PhotonLatticeError):
    """The variance never crossed the threshold on the scanned grid."""


class DegenerateData(PhotonLatticeError):
    """Fit input has zero variance in the regressor."""


class NotConverged(PhotonLatticeError):
    """Newton iteration did not reach the residual tolerance."""


class NotConvergedInput(PhotonLatticeError):
    """Operation requires a converged steady state."""


class EigenFailure(PhotonLatticeError):
    """Dense eigenvalue routine failed to converge."""
