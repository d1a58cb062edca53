"""Displacement planning: invert the cycle displacement map and sweep cycle counts.

solve_switch_angle finds the switching angle theta1 whose cycle nets a
requested displacement, by bracketing bisection on the monotone map
net_displacement(theta0, .). sweep splits a total displacement into n
equal parts for n = 1..n_max and accumulates per-cycle time and energy
into the total cost J_n = n * per-cycle running cost + n. plan_cycles
turns a requested total displacement into a concrete multi-cycle control,
picking the swing direction that is physically realizable and the smallest
cycle count whose per-cycle share is attainable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import mintime
from .dynamics import THETA_GUARD, SwimmerParams, net_displacement
from .errors import NonMonotoneError, ScallopError, UnattainableTargetError
from .lq import b_zero_synthesize, synthesize_lq
from .mintime import OptimalSolution
from .profiles import ControlProfile, CostSpec, concatenate

# Grid size for the monotonicity precheck of the displacement map.
_PRECHECK_POINTS = 33
_MAX_BISECTIONS = 200


def _theta_window() -> tuple[float, float]:
    return THETA_GUARD, math.pi / 2.0 - THETA_GUARD


def check_monotone(theta0: float, p: SwimmerParams) -> int:
    """Verify net_displacement(theta0, .) is strictly monotone on a grid.

    Returns +1 for increasing, -1 for decreasing; raises NonMonotoneError
    otherwise. This is checked, not assumed, because it is what makes the
    bisection in solve_switch_angle well posed.
    """
    lo, hi = _theta_window()
    grid = np.linspace(lo, hi, _PRECHECK_POINTS)
    vals = np.array([net_displacement(theta0, float(t), p) for t in grid])
    diffs = np.diff(vals)
    if np.all(diffs > 0):
        return 1
    if np.all(diffs < 0):
        return -1
    raise NonMonotoneError(
        f"cycle displacement is not monotone in theta1 for theta0={theta0!r}"
    )


def attainable_range(theta0: float, p: SwimmerParams) -> tuple[float, float]:
    """Signed (low, high) net_displacement values reachable from theta0."""
    lo, hi = _theta_window()
    a = net_displacement(theta0, lo, p)
    b = net_displacement(theta0, hi, p)
    return (a, b) if a <= b else (b, a)


def solve_switch_angle(dx_target: float, theta0: float, p: SwimmerParams) -> float:
    """Switching angle theta1 whose cycle displacement equals dx_target.

    Bisection on the (grid-verified) monotone map net_displacement(theta0, .),
    to |net - target| <= 1e-9 * max(1, |target|) within 200 iterations. A
    zero target returns theta0 itself; targets outside the attainable range
    raise with the range attached.
    """
    if dx_target == 0.0:
        return theta0
    check_monotone(theta0, p)
    range_lo, range_hi = attainable_range(theta0, p)
    if not range_lo <= dx_target <= range_hi:
        raise UnattainableTargetError(dx_target, range_lo, range_hi)
    tol = 1e-9 * max(1.0, abs(dx_target))
    a, b = _theta_window()
    ga = net_displacement(theta0, a, p) - dx_target
    gb = net_displacement(theta0, b, p) - dx_target
    if abs(ga) <= tol:
        return a
    if abs(gb) <= tol:
        return b
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (a + b)
        gm = net_displacement(theta0, mid, p) - dx_target
        if abs(gm) <= tol:
            return mid
        if (ga < 0) == (gm < 0):
            a, ga = mid, gm
        else:
            b, gb = mid, gm
    raise ScallopError(
        f"bisection failed to reach tolerance {tol!r} for target {dx_target!r}"
    )


def cycle_displacement(theta0: float, theta1: float, p: SwimmerParams) -> float:
    """Displacement the simulated cycle theta0 -> theta1 -> theta0 achieves.

    The cycle opens (theta rising) in regime 2 and closes in regime 1
    regardless of whether theta1 is above or below theta0, so the physical
    displacement is the integral of V2 - V1 over the swept interval: equal
    to net_displacement(theta0, theta1) when theta1 >= theta0 and to its
    negative when theta1 < theta0.
    """
    dx = net_displacement(theta0, theta1, p)
    return dx if theta1 >= theta0 else -dx


@dataclass(frozen=True)
class SweepRow:
    """One cycle-count option: angle, per-cycle effort, and total cost J_n."""

    n: int
    theta1: float
    per_cycle_time: float
    per_cycle_energy: float
    total_time: float
    J_n: float


def _nan_row(n: int) -> SweepRow:
    nan = float("nan")
    return SweepRow(n=n, theta1=nan, per_cycle_time=nan, per_cycle_energy=nan, total_time=nan, J_n=nan)


def sweep(
    dx_total: float,
    theta0: float,
    p: SwimmerParams,
    eps: float,
    spec: CostSpec,
    n_max: int,
    on_unattainable: str = "raise",
) -> tuple[SweepRow, ...]:
    """Cost of splitting dx_total into n equal-displacement cycles, n = 1..n_max.

    Each cycle restarts at theta0 and uses the energy-optimal synthesis for
    the weights in spec (minimum-time bang-bang when B = 0). The total cost
    J_n adds one unit per cycle on top of the summed running cost. With
    on_unattainable="nan", a cycle count whose per-cycle share falls outside
    the attainable range yields a NaN-filled row instead of raising.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max!r}")
    if on_unattainable not in ("raise", "nan"):
        raise ValueError(f"on_unattainable must be 'raise' or 'nan', got {on_unattainable!r}")
    rows = []
    for n in range(1, n_max + 1):
        try:
            theta1 = solve_switch_angle(dx_total / n, theta0, p)
        except UnattainableTargetError:
            if on_unattainable == "nan":
                rows.append(_nan_row(n))
                continue
            raise
        if spec.B == 0.0 and spec.A == 0.0:
            per_time = mintime.synthesize(theta0, theta1, eps).profile.t_final
            per_energy = 0.0
        elif spec.B == 0.0:
            lq_sol = b_zero_synthesize(theta0, theta1, eps, spec.A)
            per_time = lq_sol.profile.t_final
            per_energy = lq_sol.cost
        else:
            lq_sol = synthesize_lq(theta0, theta1, eps, spec.A, spec.B)
            per_time = lq_sol.profile.t_final
            per_energy = lq_sol.cost
        rows.append(
            SweepRow(
                n=n,
                theta1=theta1,
                per_cycle_time=per_time,
                per_cycle_energy=per_energy,
                total_time=n * per_time,
                J_n=n * per_energy + n,
            )
        )
    return tuple(rows)


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    lines = ["n,theta1,per_cycle_time,per_cycle_energy,total_time,J_n"]
    for r in rows:
        lines.append(
            f"{r.n},{r.theta1!r},{r.per_cycle_time!r},{r.per_cycle_energy!r},"
            f"{r.total_time!r},{r.J_n!r}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CyclePlan:
    """A concrete multi-cycle control achieving a requested total displacement."""

    n: int
    dx_total: float
    dx_per_cycle: float
    theta1: float
    solution: OptimalSolution
    profile: ControlProfile
    total_time: float


def plan_cycles(
    dx_request: float,
    theta0: float,
    p: SwimmerParams,
    eps: float,
    max_cycles: int = 1000,
) -> CyclePlan:
    """Plan the fewest minimum-time cycles whose simulated displacement is dx_request.

    The sign of realizable motion is a property of the fluid coefficients:
    if dx_request points the wrong way, it is treated as a magnitude and
    achieved in the realizable direction. Both swing directions for theta1
    are considered; the faster one wins. Raises UnattainableTargetError
    (with the total range achievable within max_cycles) if even max_cycles
    cycles cannot cover the request.
    """
    if dx_request == 0.0:
        sol = mintime.synthesize(theta0, theta0, eps)
        return CyclePlan(
            n=1, dx_total=0.0, dx_per_cycle=0.0, theta1=theta0,
            solution=sol, profile=sol.profile, total_time=0.0,
        )
    check_monotone(theta0, p)
    lo, hi = _theta_window()
    # per-cycle simulated displacement reachable with each swing direction
    reach_open = cycle_displacement(theta0, hi, p)
    reach_close = cycle_displacement(theta0, lo, p)
    best = reach_open if abs(reach_open) >= abs(reach_close) else reach_close
    signs = {math.copysign(1.0, r) for r in (reach_open, reach_close) if r != 0.0}
    if not signs:
        raise UnattainableTargetError(dx_request, 0.0, 0.0)
    want = math.copysign(1.0, dx_request)
    direction = want if want in signs else math.copysign(1.0, best)
    dx_total = math.copysign(abs(dx_request), direction)
    per_cap = max(abs(r) for r in (reach_open, reach_close) if math.copysign(1.0, r) == direction)
    n = max(1, math.ceil(abs(dx_total) / per_cap - 1e-12))
    if n > max_cycles:
        span = max_cycles * per_cap
        raise UnattainableTargetError(
            dx_request,
            -span if direction < 0 else 0.0,
            span if direction > 0 else 0.0,
        )
    share = dx_total / n
    candidates = []
    for reach, theta_map in ((reach_open, 1.0), (reach_close, -1.0)):
        if reach == 0.0 or math.copysign(1.0, reach) != direction or abs(share) > abs(reach):
            continue
        # net target for this swing direction (sign flips on the closing swing)
        theta1 = solve_switch_angle(share * theta_map, theta0, p)
        candidates.append(theta1)
    if not candidates:
        raise UnattainableTargetError(dx_request, min(0.0, n * per_cap * direction), max(0.0, n * per_cap * direction))
    theta1 = min(candidates, key=lambda t: abs(t - theta0))
    sol = mintime.synthesize(theta0, theta1, eps)
    profile = concatenate([sol.profile] * n)
    return CyclePlan(
        n=n,
        dx_total=dx_total,
        dx_per_cycle=share,
        theta1=theta1,
        solution=sol,
        profile=profile,
        total_time=profile.t_final,
    )
