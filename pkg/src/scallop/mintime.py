"""Minimum-time cycle synthesis and its continuous ramp approximations.

With theta' = u and |u| <= eps, steering theta0 -> theta1 -> theta0 as fast
as possible is bang-bang: one leg at u = eps*sign(theta1 - theta0), one leg
back, total time 2|theta1 - theta0|/eps. Because that control jumps, a
companion family indexed by k replaces each jump with a linear ramp of
width O(1/k); it is continuous, meets u(0) = u(t_f) = u0, still lands
exactly on theta1 and back on theta0, and converges to the bang-bang
control in L1 as k grows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AngleDomainError, ApproximationError, ControlBoundError
from .profiles import (
    ControlProfile,
    CostSpec,
    Segment,
    cost,
    extend,
    integrate_theta,
    l1_distance,
    theta_extrema,
)

_TIME_COST = CostSpec(0.0, 0.0, 1.0)
# Labels for the two cycle orientations and the zero-displacement cycle.
CLOSE_THEN_OPEN = "close_then_open"
OPEN_THEN_CLOSE = "open_then_close"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class OptimalSolution:
    """A synthesized cycle control with its leg times, cost, and adjoint data.

    k is None for the exact bang-bang solution and the ramp index for the
    continuous family. adjoint holds the constant per-leg adjoint values
    that make the time-optimal Hamiltonian 1 + p*u vanish (empty when no
    such certificate applies, e.g. for the ramped family).
    """

    theta0: float
    theta1: float
    eps: float
    u0: float
    k: float | None
    t1: float
    t2: float
    t_f: float
    cost: float
    case_label: str
    adjoint: tuple[float, ...]
    profile: ControlProfile

    def __post_init__(self) -> None:
        if self.t_f != self.t1 + self.t2:
            raise ValueError(f"t_f must equal t1 + t2 exactly, got {self.t_f!r} vs {self.t1 + self.t2!r}")
        if abs(self.profile.t_final - self.t_f) > 1e-9 * max(1.0, abs(self.t_f)):
            raise ValueError(
                f"profile duration {self.profile.t_final!r} disagrees with t_f={self.t_f!r}"
            )

    def to_dict(self) -> dict:
        d = {
            "theta0": self.theta0,
            "theta1": self.theta1,
            "eps": self.eps,
            "u0": self.u0,
            "t1": self.t1,
            "t2": self.t2,
            "t_f": self.t_f,
            "cost": self.cost,
            "case_label": self.case_label,
            "adjoint": list(self.adjoint),
            "profile": self.profile.to_dict(),
        }
        if self.k is not None:
            d["k"] = self.k
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_angle(name: str, theta: float) -> None:
    if not 0.0 < theta < math.pi / 2.0:
        raise AngleDomainError(f"{name}={theta!r} outside the open interval (0, pi/2)")


def solve_leg(theta_from: float, theta_to: float, eps: float) -> tuple[float, float]:
    """Constant control and duration moving theta_from to theta_to at full speed.

    Returns (u, t) with u = eps*sign(theta_to - theta_from) and
    t = |theta_to - theta_from|/eps; the degenerate leg returns (0, 0).
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    delta = theta_to - theta_from
    if delta == 0.0:
        return 0.0, 0.0
    u = eps if delta > 0 else -eps
    return u, abs(delta) / eps


def _degenerate(theta0: float, eps: float, u0: float, k: float | None) -> OptimalSolution:
    profile = ControlProfile(segments=(), eps=eps, u0=u0, continuous=True)
    return OptimalSolution(
        theta0=theta0,
        theta1=theta0,
        eps=eps,
        u0=u0,
        k=k,
        t1=0.0,
        t2=0.0,
        t_f=0.0,
        cost=0.0,
        case_label=DEGENERATE,
        adjoint=(),
        profile=profile,
    )


def synthesize(theta0: float, theta1: float, eps: float) -> OptimalSolution:
    """Exact minimum-time cycle theta0 -> theta1 -> theta0 under |u| <= eps.

    Two constant legs at +-eps with a declared jump between them;
    t_f = 2|theta0 - theta1|/eps. Equal angles yield the empty solution of
    duration zero rather than an error.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    _check_angle("theta0", theta0)
    _check_angle("theta1", theta1)
    if theta1 == theta0:
        return _degenerate(theta0, eps, 0.0, None)
    u_a, t_a = solve_leg(theta0, theta1, eps)
    u_b, t_b = solve_leg(theta1, theta0, eps)
    t_f = t_a + t_b
    profile = ControlProfile(
        segments=(
            Segment.constant(0.0, t_a, u_a),
            Segment.constant(t_a, t_f, u_b),
        ),
        eps=eps,
        u0=u_a,
        declared_switches=(t_a,),
    )
    label = OPEN_THEN_CLOSE if theta1 > theta0 else CLOSE_THEN_OPEN
    return OptimalSolution(
        theta0=theta0,
        theta1=theta1,
        eps=eps,
        u0=u_a,
        k=None,
        t1=t_a,
        t2=t_b,
        t_f=t_f,
        cost=cost(profile, theta0, _TIME_COST),
        case_label=label,
        adjoint=(-1.0 / u_a, -1.0 / u_b),
        profile=profile,
    )


def _ramped_segments(delta: float, eps: float, u0: float, k: float):
    """Segment list of the ramped closing-first family for delta = theta0 - theta1 > 0.

    Layout: ramp u0 -> -eps over 1/k, hold -eps until t1k, ramp -eps -> +eps
    over d, hold +eps, ramp +eps -> u0 over d ending at t1k + t2k, with
    t1k = (u0 + eps + 2k*delta)/(2k*eps) and t2k = (eps + k*delta)/(k*eps).
    The ramp width d = 2*eps/(k*(3*eps - u0)) is what makes both leg areas
    exact, so theta(t1k) = theta1 and theta(t_f) = theta0 hold analytically.
    """
    t1k = (u0 + eps + 2.0 * k * delta) / (2.0 * k * eps)
    t2k = (eps + k * delta) / (k * eps)
    t_f = t1k + t2k
    r1 = 1.0 / k
    d = 2.0 * eps / (k * (3.0 * eps - u0))
    hold1 = t1k - r1
    hold2 = t2k - 2.0 * d
    if hold1 < -1e-15 or hold2 < -1e-15:
        k_min = max(
            (eps - u0) / (2.0 * delta),
            eps * (eps + u0) / (delta * (3.0 * eps - u0)),
        )
        raise ApproximationError(
            f"k={k!r} too small for the ramp layout; needs k >= {k_min!r}"
        )
    segments = [Segment.linear(0.0, r1, -k * (eps + u0), u0)]
    if hold1 > 0.0:
        segments.append(Segment.constant(r1, t1k, -eps))
    mid_end = t1k + d
    segments.append(Segment.linear(t1k, mid_end, 2.0 * eps / d, -eps))
    tail_start = t_f - d
    if hold2 > 0.0:
        segments.append(Segment.constant(mid_end, tail_start, eps))
    else:
        tail_start = mid_end
    segments.append(Segment.linear(tail_start, t_f, (u0 - eps) / (t_f - tail_start), eps))
    return segments, t1k, t2k


def _negated(segments: Sequence[Segment]) -> list[Segment]:
    out = []
    for s in segments:
        if s.kind == "constant":
            out.append(Segment.constant(s.t0, s.t1, -s.params[0]))
        else:
            out.append(Segment.linear(s.t0, s.t1, -s.params[0], -s.params[1]))
    return out


def approximate(theta0: float, theta1: float, eps: float, u0: float, k: float) -> OptimalSolution:
    """Continuous ramped approximation of the minimum-time cycle, index k.

    The profile is piecewise linear, respects |u| <= eps, satisfies
    u(0) = u(t_f) = u0, and still reaches theta1 and returns to theta0
    exactly. Its duration exceeds the bang-bang optimum by
    (u0 + 3*eps)/(2*k*eps) for the closing-first case (mirrored with
    u0 -> -u0 for the opening-first case), vanishing as k grows.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    if abs(u0) > eps:
        raise ControlBoundError(f"boundary control u0={u0!r} violates |u0| <= eps={eps!r}")
    if not k >= 1:
        raise ValueError(f"ramp index k must satisfy k >= 1, got {k!r}")
    _check_angle("theta0", theta0)
    _check_angle("theta1", theta1)
    if theta1 == theta0:
        return _degenerate(theta0, eps, u0, k)
    if theta1 < theta0:
        segments, t1k, t2k = _ramped_segments(theta0 - theta1, eps, u0, k)
        label = CLOSE_THEN_OPEN
    else:
        # reflect theta -> 2*theta0 - theta, u -> -u; the closing-first layout
        # applied to (theta0 - theta1 < 0) with boundary value -u0, negated back
        segments, t1k, t2k = _ramped_segments(theta1 - theta0, eps, -u0, k)
        segments = _negated(segments)
        label = OPEN_THEN_CLOSE
    profile = ControlProfile(segments=tuple(segments), eps=eps, u0=u0, continuous=True)
    lo, hi = theta_extrema(profile, theta0)
    if lo <= 0.0 or hi >= math.pi / 2.0:
        raise AngleDomainError(
            f"ramped cycle would sweep theta through [{lo!r}, {hi!r}], outside (0, pi/2)"
        )
    return OptimalSolution(
        theta0=theta0,
        theta1=theta1,
        eps=eps,
        u0=u0,
        k=k,
        t1=t1k,
        t2=t2k,
        t_f=t1k + t2k,
        cost=cost(profile, theta0, _TIME_COST),
        case_label=label,
        adjoint=(),
        profile=profile,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    """One row of the ramp-family convergence table."""

    k: float
    t_f_k: float
    t_f_gap: float
    l1_gap: float
    sup_theta_gap: float


def convergence_report(
    theta0: float,
    theta1: float,
    eps: float,
    u0: float,
    k_list: Sequence[float],
) -> tuple[ConvergenceRow, ...]:
    """Convergence of the ramped family toward the bang-bang optimum.

    For each k: the family's duration, its excess over the optimum, the L1
    distance between the controls, and the sup over a 10^4-point grid of
    |theta_k - theta| (the optimal control continued constantly past its
    own final time). All three gaps shrink monotonically in k.
    """
    if not k_list:
        raise ValueError("k_list must be nonempty")
    exact = synthesize(theta0, theta1, eps)
    rows = []
    for k in k_list:
        ap = approximate(theta0, theta1, eps, u0, k)
        t_gap = ap.t_f - exact.t_f
        l1 = l1_distance(ap.profile, exact.profile)
        grid = np.linspace(0.0, ap.t_f, 10_000)
        theta_k = integrate_theta(ap.profile, theta0).eval(grid)
        theta_ex = integrate_theta(extend(exact.profile, ap.t_f), theta0).eval(grid)
        sup = float(np.max(np.abs(theta_k - theta_ex))) if ap.t_f > 0 else 0.0
        rows.append(ConvergenceRow(k=k, t_f_k=ap.t_f, t_f_gap=t_gap, l1_gap=l1, sup_theta_gap=sup))
    return tuple(rows)


def convergence_csv(rows: Sequence[ConvergenceRow]) -> str:
    lines = ["k,t_f_k,t_f_gap,l1_gap,sup_theta_gap"]
    for r in rows:
        lines.append(f"{r.k!r},{r.t_f_k!r},{r.t_f_gap!r},{r.l1_gap!r},{r.sup_theta_gap!r}")
    return "\n".join(lines) + "\n"
