"""Exception types shared by all mblab modules.

Numerical failures are always raised, never encoded in return values;
NaN/inf leaking out of a routine is a bug, not a result.
"""


class MBLabError(Exception):
    """Base class for all mblab errors."""


class PoleError(MBLabError):
    """Argument is at (or numerically indistinguishable from) a pole."""


class NonConvergence(MBLabError):
    """An iterative refinement failed to stabilize within its budget."""


class EndpointSingularity(MBLabError):
    """Integrand endpoint exponent is too singular to integrate (alpha <= -1)."""


class ContourNonConvergence(NonConvergence):
    """Mellin-Barnes contour quadrature failed to stabilize."""


class DomainError(MBLabError):
    """Argument lies outside the function's domain (e.g. on a branch cut)."""


class SectorError(DomainError):
    """arg(z) is outside the sector where an asymptotic formula is valid."""


class RayError(DomainError):
    """Evaluation exactly on a discontinuity ray without a side tag."""


class BranchCutError(DomainError):
    """Evaluation on a branch cut of a g-function."""


class CutError(DomainError):
    """Evaluation on the cut [-1, 0] of the conformal map."""


class AxisError(DomainError):
    """Cauchy transform evaluated on [0, oo) without a boundary side."""


class NotOneCut(MBLabError):
    """Equilibrium minimizer support was detected as disconnected."""


class FitFailure(MBLabError):
    """An edge-exponent fit deviates too far from its theoretical value."""


class SingularMoment(MBLabError):
    """Moment matrix pivot vanished at working precision; raise mantissa_bits."""


class DegreeTooLow(MBLabError):
    """Biorthogonal system was built with N smaller than the requested kernel size."""


class PrecisionLoss(MBLabError):
    """Cancellation exceeded the working-precision budget."""


class IllConditioned(UserWarning):
    """Moment-minor ratios span most of the working precision."""
