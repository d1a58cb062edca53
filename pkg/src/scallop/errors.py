"""Exception types shared across the package."""

from __future__ import annotations


class ScallopError(Exception):
    """Base class for all package-specific errors."""


class AngleDomainError(ScallopError):
    """A valve angle lies outside the admissible open interval (0, pi/2)."""


class TimeDomainError(ScallopError):
    """A time argument lies outside the domain of a profile or trajectory."""


class ControlBoundError(ScallopError):
    """A control value exceeds the declared bound |u| <= eps."""


class ProfileError(ScallopError):
    """A control profile is structurally invalid (gaps, overlaps, continuity)."""


class QuadratureError(ScallopError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ApproximationError(ScallopError):
    """A continuous ramp approximation cannot be built for the given k."""


class UnattainableTargetError(ScallopError):
    """A displacement target lies outside the attainable range.

    Carries the requested target and the attainable interval [lo, hi].
    """

    def __init__(self, target: float, lo: float, hi: float):
        self.target = float(target)
        self.lo = float(lo)
        self.hi = float(hi)
        super().__init__(
            f"displacement target {target!r} outside attainable range "
            f"[{lo!r}, {hi!r}]"
        )


class NonMonotoneError(ScallopError):
    """The displacement map failed the strict-monotonicity grid precheck."""


class UnhandledLqCaseError(ScallopError):
    """The quadratic-cost synthesis has no closed form for these parameters."""


class DomainExitError(ScallopError):
    """The integrated valve angle left the guarded domain.

    Carries the first offending time and angle.
    """

    def __init__(self, t: float, theta: float):
        self.t = float(t)
        self.theta = float(theta)
        super().__init__(f"theta left the guarded domain at t={t!r} (theta={theta!r})")
