"""Quadratic-cost cycle synthesis with saturation case dispatch.

Minimizing the energy J = integral of A*u^2 + B*theta^2 over one cycle
theta0 -> theta1 -> theta0 under |u| <= eps splits on the ratio
rho = sqrt(A/B): when theta0 >= rho*eps both legs saturate at +-eps
(FullySaturated); when theta0 < rho*eps < theta1 the closing leg rides -eps
down to theta = rho*eps and then releases onto the exponential arc
u = -eps*exp(-(t-ts)/rho), along which p = 2*sqrt(A*B)*theta satisfies the
stationarity u = -p/(2A) and adjoint p' = -2B*theta conditions exactly
(SaturatedThenExponential). theta1 <= rho*eps is not handled and raises.

Two leg-2 durations are reported for the mixed case: the clipped value
rho*log(theta1/theta0), and the realized duration of the arc above, which
is what actually returns theta to theta0; they differ because the clipped
arc stops short of the boundary condition. The profile always carries the
realized, boundary-exact arc, and J is always evaluated on that profile.
With B = 0 the problem reduces to minimum time and is delegated there.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import mintime
from .errors import AngleDomainError, ApproximationError, ControlBoundError, UnhandledLqCaseError
from .profiles import ControlProfile, CostSpec, Segment, cost, theta_extrema

FULLY_SATURATED = "FullySaturated"
SATURATED_THEN_EXPONENTIAL = "SaturatedThenExponential"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class LqSolution:
    """A synthesized quadratic-cost cycle.

    t1, t2, t_f are the dispatch-formula times; t2_realized and
    t_f_realized are the durations of the profile actually returned (they
    differ from the former only in the mixed case, where the clipped
    formula stops short of theta0). cost is evaluated exactly on the
    realized profile. adjoint holds the parameters of p(t) on the
    unsaturated arc, empty when every arc is saturated; k is the ramp
    index when the solution is a continuous approximation.
    """

    theta0: float
    theta1: float
    eps: float
    A: float
    B: float
    t1: float
    t2: float
    t_f: float
    t2_realized: float
    t_f_realized: float
    cost: float
    case_label: str
    adjoint: dict[str, float] = field(default_factory=dict)
    profile: ControlProfile = None
    k: float | None = None

    def to_dict(self) -> dict:
        d = {
            "theta0": self.theta0,
            "theta1": self.theta1,
            "eps": self.eps,
            "A": self.A,
            "B": self.B,
            "t1": self.t1,
            "t2": self.t2,
            "t_f": self.t_f,
            "t2_realized": self.t2_realized,
            "t_f_realized": self.t_f_realized,
            "cost": self.cost,
            "case_label": self.case_label,
            "adjoint": dict(self.adjoint),
            "profile": self.profile.to_dict(),
        }
        if self.k is not None:
            d["k"] = self.k
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def jensen_bound(theta0: float, theta1: float, t1: float) -> float:
    """Lower bound (theta1 - theta0)^2 / t1 on the leg energy integral of u^2.

    Equality holds exactly when the control is constant on the leg.
    """
    if not t1 > 0:
        raise ValueError(f"leg duration must be positive, got {t1!r}")
    return (theta1 - theta0) ** 2 / t1


def _check_angle(name: str, theta: float) -> None:
    if not 0.0 < theta < math.pi / 2.0:
        raise AngleDomainError(f"{name}={theta!r} outside the open interval (0, pi/2)")


def _check_params(eps: float, A: float, B: float) -> None:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    if not A > 0:
        raise ValueError(f"weight A must be positive, got {A!r}")
    if B < 0:
        raise ValueError(f"weight B must be nonnegative, got {B!r}")


def b_zero_synthesize(theta0: float, theta1: float, eps: float, A: float) -> LqSolution:
    """Quadratic-cost solution for B = 0: identical to the minimum-time control.

    With no theta term the energy is A * integral of u^2 <= A*eps^2*t, so
    riding the bound is optimal and J = A*eps^2*t_f.
    """
    _check_params(eps, A, 0.0)
    ms = mintime.synthesize(theta0, theta1, eps)
    energy = cost(ms.profile, theta0, CostSpec(A, 0.0, 0.0))
    label = DEGENERATE if ms.case_label == mintime.DEGENERATE else FULLY_SATURATED
    return LqSolution(
        theta0=theta0,
        theta1=theta1,
        eps=eps,
        A=A,
        B=0.0,
        t1=ms.t1,
        t2=ms.t2,
        t_f=ms.t_f,
        t2_realized=ms.t2,
        t_f_realized=ms.t_f,
        cost=energy,
        case_label=label,
        adjoint={},
        profile=ms.profile,
    )


def _degenerate(theta0: float, eps: float, A: float, B: float, k: float | None = None) -> LqSolution:
    profile = ControlProfile(segments=(), eps=eps, u0=0.0, continuous=True)
    return LqSolution(
        theta0=theta0,
        theta1=theta0,
        eps=eps,
        A=A,
        B=B,
        t1=0.0,
        t2=0.0,
        t_f=0.0,
        t2_realized=0.0,
        t_f_realized=0.0,
        cost=0.0,
        case_label=DEGENERATE,
        adjoint={},
        profile=profile,
        k=k,
    )


def _forward_case(theta0: float, theta1: float, eps: float, A: float, B: float):
    """Case dispatch and leg data for theta1 > theta0, returned as plain numbers.

    Returns (label, t1, t2_formula, segments, t2_realized, adjoint).
    """
    rho = math.sqrt(A / B)
    if theta1 <= rho * eps:
        raise UnhandledLqCaseError(
            f"theta1={theta1!r} <= eps*sqrt(A/B)={rho * eps!r}: no synthesis formula applies"
        )
    t1 = (theta1 - theta0) / eps
    if theta0 >= rho * eps:
        t2 = (theta1 - theta0) / eps
        segments = (
            Segment.constant(0.0, t1, eps),
            Segment.constant(t1, t1 + t2, -eps),
        )
        return FULLY_SATURATED, t1, t2, segments, t2, {}
    # mixed case: saturated descent to theta = rho*eps, then the exponential arc
    t2_formula = rho * math.log(theta1 / theta0)
    sat = (theta1 - rho * eps) / eps
    tail = rho * math.log(rho * eps / theta0)
    t2_real = sat + tail
    ts = t1 + sat
    segments = (
        Segment.constant(0.0, t1, eps),
        Segment.constant(t1, ts, -eps),
        Segment.exponential(ts, ts + tail, -eps, -1.0 / rho),
    )
    adjoint = {
        "p_coeff": 2.0 * A * eps,
        "rate": -1.0 / rho,
        "t_start": ts,
        "p_theta_ratio": 2.0 * math.sqrt(A * B),
    }
    return SATURATED_THEN_EXPONENTIAL, t1, t2_formula, segments, t2_real, adjoint


def _reflect_segments(segments) -> tuple[Segment, ...]:
    out = []
    for s in segments:
        if s.kind == "constant":
            out.append(Segment.constant(s.t0, s.t1, -s.params[0]))
        elif s.kind == "linear":
            out.append(Segment.linear(s.t0, s.t1, -s.params[0], -s.params[1]))
        else:
            out.append(Segment.exponential(s.t0, s.t1, -s.params[0], s.params[1]))
    return tuple(out)


def synthesize_lq(theta0: float, theta1: float, eps: float, A: float, B: float) -> LqSolution:
    """Quadratic-cost cycle synthesis with the saturation case dispatch.

    Handles theta1 > theta0 directly; theta0 > theta1 is solved through the
    reflection theta -> (theta0 + theta1) - theta, u -> -u, with the cost
    re-evaluated on the reflected profile. Equal angles return the empty
    degenerate solution; B = 0 delegates to b_zero_synthesize.
    """
    _check_params(eps, A, B)
    _check_angle("theta0", theta0)
    _check_angle("theta1", theta1)
    if B == 0.0:
        return b_zero_synthesize(theta0, theta1, eps, A)
    if theta0 == theta1:
        return _degenerate(theta0, eps, A, B)
    reflected = theta1 < theta0
    lo, hi = (theta1, theta0) if reflected else (theta0, theta1)
    label, t1, t2, segments, t2_real, adjoint = _forward_case(lo, hi, eps, A, B)
    if reflected:
        segments = _reflect_segments(segments)
        adjoint = dict(adjoint, reflected=1.0)
    profile = ControlProfile(
        segments=segments,
        eps=eps,
        u0=segments[0].value_at_start,
        declared_switches=(t1,),
    )
    return LqSolution(
        theta0=theta0,
        theta1=theta1,
        eps=eps,
        A=A,
        B=B,
        t1=t1,
        t2=t2,
        t_f=t1 + t2,
        t2_realized=t2_real,
        t_f_realized=t1 + t2_real,
        cost=cost(profile, theta0, CostSpec(A, B, 0.0)),
        case_label=label,
        adjoint=adjoint,
        profile=profile,
    )


def _ramped_forward(theta0: float, theta1: float, eps: float, A: float, B: float, u0: float, k: float):
    """Continuous ramped layout for theta1 > theta0, B > 0.

    Start ramp u0 -> +eps over 1/k, shortened hold at +eps reaching theta1
    exactly, bridge +eps -> -eps over 1/k (zero net area), then the case
    arcs, and a final ramp back to u0 over 1/k chosen so theta(t_f) = theta0.
    """
    rho = math.sqrt(A / B)
    if theta1 <= rho * eps:
        raise UnhandledLqCaseError(
            f"theta1={theta1!r} <= eps*sqrt(A/B)={rho * eps!r}: no synthesis formula applies"
        )
    r = 1.0 / k
    hold1 = (theta1 - theta0) / eps - (u0 + eps) / (2.0 * k * eps)
    if hold1 < 0.0:
        raise ApproximationError(f"k={k!r} too small for the opening ramp layout")
    t_a = r + hold1
    t_b = t_a + r
    segments = [
        Segment.linear(0.0, r, k * (eps - u0), u0),
        Segment.constant(r, t_a, eps),
        Segment.linear(t_a, t_b, -2.0 * k * eps, eps),
    ]
    if theta0 >= rho * eps:
        # fully saturated closing leg with an end ramp of balanced area
        hold2 = (theta1 - theta0) / eps + (u0 - eps) / (2.0 * k * eps)
        if hold2 < 0.0:
            raise ApproximationError(f"k={k!r} too small for the closing ramp layout")
        t_c = t_b + hold2
        segments.append(Segment.constant(t_b, t_c, -eps))
        segments.append(Segment.linear(t_c, t_c + r, k * (u0 + eps), -eps))
        return segments, t_c + r
    denom = 1.0 - 1.0 / (2.0 * k * rho)
    if denom <= 0.0:
        raise ApproximationError(f"k={k!r} too small for the exponential tail layout")
    theta_star = (theta0 - u0 / (2.0 * k)) / denom
    if not theta0 / 2.0 < theta_star <= rho * eps:
        raise ApproximationError(
            f"k={k!r} puts the tail release angle {theta_star!r} outside (0, rho*eps]"
        )
    sat = (theta1 - rho * eps) / eps
    tail = rho * math.log(rho * eps / theta_star)
    t_c = t_b + sat
    t_d = t_c + tail
    u_star = -theta_star / rho
    segments.append(Segment.constant(t_b, t_c, -eps))
    if tail > 0.0:
        segments.append(Segment.exponential(t_c, t_d, -eps, -1.0 / rho))
    segments.append(Segment.linear(t_d, t_d + r, k * (u0 - u_star), u_star))
    return segments, t_d + r


def approximate_lq(
    theta0: float, theta1: float, eps: float, A: float, B: float, u0: float, k: float
) -> LqSolution:
    """Continuous approximation of the quadratic-cost solution, ramp index k.

    Each jump of the exact control is replaced by a linear ramp of width
    1/k, mirroring the minimum-time construction; the profile satisfies
    u(0) = u(t_f) = u0 and still hits theta1 and returns to theta0 exactly.
    """
    _check_params(eps, A, B)
    if abs(u0) > eps:
        raise ControlBoundError(f"boundary control u0={u0!r} violates |u0| <= eps={eps!r}")
    if not k >= 1:
        raise ValueError(f"ramp index k must satisfy k >= 1, got {k!r}")
    _check_angle("theta0", theta0)
    _check_angle("theta1", theta1)
    if theta0 == theta1:
        return _degenerate(theta0, eps, A, B, k=k)
    if B == 0.0:
        ms = mintime.approximate(theta0, theta1, eps, u0, k)
        energy = cost(ms.profile, theta0, CostSpec(A, 0.0, 0.0))
        return LqSolution(
            theta0=theta0,
            theta1=theta1,
            eps=eps,
            A=A,
            B=0.0,
            t1=ms.t1,
            t2=ms.t2,
            t_f=ms.t_f,
            t2_realized=ms.t2,
            t_f_realized=ms.t_f,
            cost=energy,
            case_label=FULLY_SATURATED,
            adjoint={},
            profile=ms.profile,
            k=k,
        )
    reflected = theta1 < theta0
    lo, hi = (theta1, theta0) if reflected else (theta0, theta1)
    segs, t_f = _ramped_forward(lo, hi, eps, A, B, -u0 if reflected else u0, k)
    if reflected:
        segs = _reflect_segments(segs)
    profile = ControlProfile(segments=tuple(segs), eps=eps, u0=u0, continuous=True)
    path_lo, path_hi = theta_extrema(profile, theta0)
    if path_lo <= 0.0 or path_hi >= math.pi / 2.0:
        raise AngleDomainError(
            f"ramped cycle would sweep theta through [{path_lo!r}, {path_hi!r}], outside (0, pi/2)"
        )
    exact = synthesize_lq(theta0, theta1, eps, A, B)
    return LqSolution(
        theta0=theta0,
        theta1=theta1,
        eps=eps,
        A=A,
        B=B,
        t1=exact.t1,
        t2=exact.t2,
        t_f=exact.t_f,
        t2_realized=t_f - exact.t1,
        t_f_realized=t_f,
        cost=cost(profile, theta0, CostSpec(A, B, 0.0)),
        case_label=exact.case_label,
        adjoint={},
        profile=profile,
        k=k,
    )
