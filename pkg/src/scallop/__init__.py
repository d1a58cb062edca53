"""Optimal open-close cycles for a two-valve swimmer with regime switching.

A swimmer whose valves sweep an angle theta in (0, pi/2) moves with
x' = V_w(theta) * theta', where the velocity factor V_w depends on whether
the surrounding fluid currently acts as viscous (w=1) or ideal (w=2). A
delayed relay switches the regime when the angular velocity u = theta'
attains +-eps, which breaks the reciprocity that otherwise forbids net
motion. The package synthesizes minimum-time and quadratic-cost cycle
controls in closed form, plans switching angles for displacement targets,
and validates everything with an exact-event hybrid simulator.
"""

from .dynamics import (
    FluidRegime,
    SwimmerParams,
    net_displacement,
    primitive,
    regime_velocity,
    v_ideal,
    v_viscous,
)
from .errors import (
    AngleDomainError,
    ApproximationError,
    ControlBoundError,
    DomainExitError,
    NonMonotoneError,
    ProfileError,
    QuadratureError,
    ScallopError,
    TimeDomainError,
    UnattainableTargetError,
    UnhandledLqCaseError,
)
from .hysteresis import RegimeSignal, RelayState, evolve, evolve_sampled, step
from .lq import LqSolution, approximate_lq, b_zero_synthesize, jensen_bound, synthesize_lq
from .mintime import ConvergenceRow, OptimalSolution, approximate, convergence_report, solve_leg, synthesize
from .planner import (
    CyclePlan,
    SweepRow,
    attainable_range,
    cycle_displacement,
    plan_cycles,
    solve_switch_angle,
    sweep,
    sweep_csv,
)
from .profiles import (
    ControlProfile,
    CostSpec,
    Segment,
    ThetaPath,
    concatenate,
    cost,
    eval_u,
    extend,
    integrate_theta,
    l1_distance,
    theta_extrema,
)
from .quadrature import adaptive_simpson
from .simulator import Trajectory, VerifyReport, simulate, verify

__version__ = "0.1.0"

__all__ = [
    "AngleDomainError",
    "ApproximationError",
    "ControlBoundError",
    "ControlProfile",
    "ConvergenceRow",
    "CostSpec",
    "CyclePlan",
    "DomainExitError",
    "FluidRegime",
    "LqSolution",
    "NonMonotoneError",
    "OptimalSolution",
    "ProfileError",
    "QuadratureError",
    "RegimeSignal",
    "RelayState",
    "ScallopError",
    "Segment",
    "SweepRow",
    "SwimmerParams",
    "ThetaPath",
    "TimeDomainError",
    "Trajectory",
    "UnattainableTargetError",
    "UnhandledLqCaseError",
    "VerifyReport",
    "adaptive_simpson",
    "approximate",
    "approximate_lq",
    "attainable_range",
    "b_zero_synthesize",
    "concatenate",
    "convergence_report",
    "cost",
    "cycle_displacement",
    "eval_u",
    "evolve",
    "evolve_sampled",
    "extend",
    "integrate_theta",
    "jensen_bound",
    "l1_distance",
    "net_displacement",
    "plan_cycles",
    "primitive",
    "regime_velocity",
    "simulate",
    "solve_leg",
    "solve_switch_angle",
    "step",
    "sweep",
    "sweep_csv",
    "synthesize",
    "synthesize_lq",
    "theta_extrema",
    "v_ideal",
    "v_viscous",
    "verify",
]
