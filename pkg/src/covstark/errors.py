"""Exception types shared across the package."""


class CovstarkError(Exception):
    """Base class for all package errors."""


class DomainError(CovstarkError):
    """Argument outside the mathematical domain of an operation."""


class FrameRecoveryError(CovstarkError):
    """A four-vector could not be matched to frame parameters."""


class SingularFrameError(CovstarkError):
    """The frame chart is degenerate (omega at the +-pi/2 boundary)."""


class OutOfRMSError(CovstarkError):
    """Point lies outside the restricted (spacelike-supported) region."""


class BranchError(CovstarkError):
    """Requested function branch is outside numerical scope."""


class ConvergenceError(CovstarkError):
    """A quadrature or eigensolver failed to converge to tolerance."""


class BasisNotClosedError(CovstarkError):
    """Degenerate-subspace basis is inconsistent with the selection rules."""


class ConfigError(CovstarkError):
    """Invalid or contradictory run configuration."""


class StepOverflowError(CovstarkError):
    """Trajectory integration produced a non-finite state."""


class TailError(CovstarkError):
    """Integrand does not decay at the ends of the integration window."""


class ResolutionError(CovstarkError):
    """Grid spacing too coarse for the requested smearing width."""
