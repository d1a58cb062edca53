"""Piecewise-analytic control profiles u(t) and exact integrals along them.

A profile is an ordered, contiguous list of segments over [0, t_final], each
constant, linear, or exponential in time. All quantities the rest of the
package needs from a control - u(t), the angle path theta(t), quadratic
running costs, and L1 distances between two controls - admit closed forms
per segment and are computed exactly here, with no generic quadrature.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import ControlBoundError, ProfileError, TimeDomainError

# Adjacent segments may disagree by this much at a junction and still count
# as continuous; segment endpoints may exceed the control bound by the same.
JUNCTION_TOL = 1e-12
# Slack accepted on time-domain checks (absolute).
TIME_TOL = 1e-9

CONSTANT = "constant"
LINEAR = "linear"
EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class Segment:
    """One analytic piece of a control, defined on [t0, t1].

    kind "constant": params (c,), u = c.
    kind "linear": params (slope, value_at_t0), u = value_at_t0 + slope*(t-t0).
    kind "exponential": params (coeff, rate), u = coeff*exp(rate*(t-t0)).
    """

    t0: float
    t1: float
    kind: str
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.t1 > self.t0:
            raise ProfileError(f"segment needs t1 > t0, got [{self.t0!r}, {self.t1!r}]")
        n_expected = {CONSTANT: 1, LINEAR: 2, EXPONENTIAL: 2}
        if self.kind not in n_expected:
            raise ProfileError(f"unknown segment kind {self.kind!r}")
        if len(self.params) != n_expected[self.kind]:
            raise ProfileError(f"{self.kind} segment takes {n_expected[self.kind]} params, got {self.params!r}")
        object.__setattr__(self, "params", tuple(float(v) for v in self.params))

    @classmethod
    def constant(cls, t0: float, t1: float, c: float) -> "Segment":
        return cls(t0, t1, CONSTANT, (c,))

    @classmethod
    def linear(cls, t0: float, t1: float, slope: float, value_at_t0: float) -> "Segment":
        return cls(t0, t1, LINEAR, (slope, value_at_t0))

    @classmethod
    def exponential(cls, t0: float, t1: float, coeff: float, rate: float) -> "Segment":
        return cls(t0, t1, EXPONENTIAL, (coeff, rate))

    @property
    def duration(self) -> float:
        return self.t1 - self.t0

    def value(self, t):
        """u at time t (scalar or array); t is not range-checked here."""
        tau = np.asarray(t, dtype=float) - self.t0
        if self.kind == CONSTANT:
            out = np.full_like(tau, self.params[0])
        elif self.kind == LINEAR:
            slope, v0 = self.params
            out = v0 + slope * tau
        else:
            coeff, rate = self.params
            out = coeff * np.exp(rate * tau)
        return float(out) if np.ndim(t) == 0 else out

    @property
    def value_at_start(self) -> float:
        return self.value(self.t0)

    @property
    def value_at_end(self) -> float:
        return self.value(self.t1)

    def integral_to(self, tau: float) -> float:
        """Integral of u over [t0, t0+tau], exact per kind."""
        if self.kind == CONSTANT:
            return self.params[0] * tau
        if self.kind == LINEAR:
            slope, v0 = self.params
            return v0 * tau + 0.5 * slope * tau * tau
        coeff, rate = self.params
        if rate == 0.0:
            return coeff * tau
        return coeff / rate * math.expm1(rate * tau)

    def integral_between(self, x: float, y: float) -> float:
        """Integral of u over [x, y] in global time, exact."""
        return self.integral_to(y - self.t0) - self.integral_to(x - self.t0)

    def integral(self) -> float:
        return self.integral_to(self.duration)

    def u_squared_integral(self) -> float:
        """Integral of u^2 over the whole segment, exact."""
        d = self.duration
        if self.kind == CONSTANT:
            c = self.params[0]
            return c * c * d
        if self.kind == LINEAR:
            slope, v0 = self.params
            return v0 * v0 * d + v0 * slope * d * d + slope * slope * d ** 3 / 3.0
        coeff, rate = self.params
        if rate == 0.0:
            return coeff * coeff * d
        return coeff * coeff / (2.0 * rate) * math.expm1(2.0 * rate * d)

    def theta_squared_integral(self, theta_start: float) -> float:
        """Integral of theta^2 over the segment with theta(t0) = theta_start, exact."""
        d = self.duration
        if self.kind == CONSTANT:
            c = self.params[0]
            return theta_start ** 2 * d + theta_start * c * d * d + c * c * d ** 3 / 3.0
        if self.kind == LINEAR:
            # theta is the quadratic q0 + q1 tau + q2 tau^2
            slope, v0 = self.params
            q0, q1, q2 = theta_start, v0, 0.5 * slope
            return (
                q0 * q0 * d
                + q0 * q1 * d * d
                + (q1 * q1 + 2.0 * q0 * q2) * d ** 3 / 3.0
                + q1 * q2 * d ** 4 / 2.0
                + q2 * q2 * d ** 5 / 5.0
            )
        coeff, rate = self.params
        if rate == 0.0:
            c = coeff
            return theta_start ** 2 * d + theta_start * c * d * d + c * c * d ** 3 / 3.0
        # theta = alpha + beta exp(rate tau)
        beta = coeff / rate
        alpha = theta_start - beta
        return (
            alpha * alpha * d
            + 2.0 * alpha * beta / rate * math.expm1(rate * d)
            + beta * beta / (2.0 * rate) * math.expm1(2.0 * rate * d)
        )

    def to_dict(self) -> dict:
        names = {CONSTANT: ("c",), LINEAR: ("slope", "value_at_t0"), EXPONENTIAL: ("coeff", "rate")}
        return {
            "t0": self.t0,
            "t1": self.t1,
            "kind": self.kind,
            "params": dict(zip(names[self.kind], self.params)),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Segment":
        names = {CONSTANT: ("c",), LINEAR: ("slope", "value_at_t0"), EXPONENTIAL: ("coeff", "rate")}
        kind = d["kind"]
        if kind not in names:
            raise ProfileError(f"unknown segment kind {kind!r}")
        params = tuple(float(d["params"][n]) for n in names[kind])
        return cls(float(d["t0"]), float(d["t1"]), kind, params)


@dataclass(frozen=True)
class CostSpec:
    """Weights of the running cost A*u^2 + B*theta^2 (+ time_weight per unit time)."""

    A: float
    B: float
    time_weight: float = 0.0

    def __post_init__(self) -> None:
        if self.A < 0 or self.B < 0:
            raise ValueError(f"cost weights must be nonnegative, got A={self.A!r}, B={self.B!r}")
        if self.time_weight not in (0.0, 1.0, 0, 1):
            raise ValueError(f"time_weight must be 0 or 1, got {self.time_weight!r}")
        if self.A == 0 and self.B == 0 and self.time_weight == 0:
            raise ValueError("cost spec needs at least one nonzero weight")


@dataclass(frozen=True)
class ControlProfile:
    """A control on [0, t_final]: contiguous segments plus relay metadata.

    eps is the declared control bound (|u| <= eps on every segment), u0 the
    declared boundary value, declared_switches the times where the profile
    jumps between -eps and +eps so the relay need not hunt for crossings.
    With continuous=True the profile must be continuous and satisfy
    u(0) = u(t_final) = u0. An empty segment list is the degenerate profile
    of duration zero.
    """

    segments: tuple[Segment, ...]
    eps: float
    u0: float
    declared_switches: tuple[float, ...] = ()
    continuous: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "declared_switches", tuple(float(t) for t in self.declared_switches))
        if not self.eps > 0:
            raise ProfileError(f"declared bound eps must be positive, got {self.eps!r}")
        segs = self.segments
        if segs:
            if abs(segs[0].t0) > TIME_TOL:
                raise ProfileError(f"profile must start at t=0, got {segs[0].t0!r}")
            for left, right in zip(segs, segs[1:]):
                if abs(right.t0 - left.t1) > TIME_TOL:
                    raise ProfileError(
                        f"segments must tile without gaps: {left.t1!r} then {right.t0!r}"
                    )
        bound = self.eps + JUNCTION_TOL
        for seg in segs:
            # all three kinds are monotone in t, so endpoint checks bound the segment
            if abs(seg.value_at_start) > bound or abs(seg.value_at_end) > bound:
                raise ControlBoundError(
                    f"segment on [{seg.t0!r}, {seg.t1!r}] leaves [-eps, eps] with eps={self.eps!r}"
                )
        if self.continuous and segs:
            for left, right in zip(segs, segs[1:]):
                if abs(right.value_at_start - left.value_at_end) > JUNCTION_TOL:
                    raise ProfileError(
                        f"continuous profile has a jump at t={right.t0!r}"
                    )
            if abs(segs[0].value_at_start - self.u0) > JUNCTION_TOL or abs(
                segs[-1].value_at_end - self.u0
            ) > JUNCTION_TOL:
                raise ProfileError("continuous profile must have u(0) = u(t_final) = u0")
        for a, b in zip(self.declared_switches, self.declared_switches[1:]):
            if not b > a:
                raise ProfileError("declared switch times must be strictly increasing")
        for t in self.declared_switches:
            if t < -TIME_TOL or t > self.t_final + TIME_TOL:
                raise ProfileError(f"declared switch {t!r} outside [0, {self.t_final!r}]")

    @property
    def t_final(self) -> float:
        return self.segments[-1].t1 if self.segments else 0.0

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def segment_index_at(self, t: float) -> int:
        """Index of the segment whose formula applies at t (right segment at junctions)."""
        starts = [s.t0 for s in self.segments]
        i = int(np.searchsorted(starts, t, side="right")) - 1
        return min(max(i, 0), len(self.segments) - 1)

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "u0": self.u0,
            "continuous": self.continuous,
            "segments": [s.to_dict() for s in self.segments],
            "declared_switches": list(self.declared_switches),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ControlProfile":
        return cls(
            segments=tuple(Segment.from_dict(s) for s in d["segments"]),
            eps=float(d["eps"]),
            u0=float(d["u0"]),
            declared_switches=tuple(float(t) for t in d.get("declared_switches", ())),
            continuous=bool(d.get("continuous", False)),
        )

    @classmethod
    def from_json(cls, text: str) -> "ControlProfile":
        return cls.from_dict(json.loads(text))


def eval_u(profile: ControlProfile, t):
    """Control value at time t; at interior junctions the right segment wins.

    Accepts scalars or arrays in [0, t_final]. The degenerate empty profile
    answers u0 at t=0 only.
    """
    tf = profile.t_final
    arr = np.asarray(t, dtype=float)
    if arr.size and (float(arr.min()) < -TIME_TOL or float(arr.max()) > tf + TIME_TOL):
        raise TimeDomainError(f"time outside [0, {tf!r}]")
    if profile.is_empty:
        out = np.full_like(arr, profile.u0)
        return float(out) if np.ndim(t) == 0 else out
    starts = np.array([s.t0 for s in profile.segments])
    idx = np.clip(np.searchsorted(starts, arr, side="right") - 1, 0, len(profile.segments) - 1)
    out = np.empty_like(arr, dtype=float)
    for i, seg in enumerate(profile.segments):
        mask = idx == i
        if np.any(mask):
            out[mask] = np.asarray(seg.value(arr[mask]), dtype=float)
    return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class ThetaPath:
    """The angle trajectory theta(t) driven by a profile: theta' = u, theta(0) = theta0."""

    profile: ControlProfile
    theta0: float
    knots: tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        vals = [self.theta0]
        for seg in self.profile.segments:
            vals.append(vals[-1] + seg.integral())
        object.__setattr__(self, "knots", tuple(vals))

    @property
    def theta_final(self) -> float:
        return self.knots[-1]

    def eval(self, t):
        """theta at time t (scalar or array), exact per segment."""
        prof = self.profile
        arr = np.asarray(t, dtype=float)
        if arr.size and (float(arr.min()) < -TIME_TOL or float(arr.max()) > prof.t_final + TIME_TOL):
            raise TimeDomainError(f"time outside [0, {prof.t_final!r}]")
        if prof.is_empty:
            out = np.full_like(arr, self.theta0)
            return float(out) if np.ndim(t) == 0 else out
        starts = np.array([s.t0 for s in prof.segments])
        idx = np.clip(np.searchsorted(starts, arr, side="right") - 1, 0, len(prof.segments) - 1)
        out = np.empty_like(arr, dtype=float)
        for i, seg in enumerate(prof.segments):
            mask = idx == i
            if not np.any(mask):
                continue
            tau = arr[mask] - seg.t0
            if seg.kind == CONSTANT:
                vals = self.knots[i] + seg.params[0] * tau
            elif seg.kind == LINEAR:
                slope, v0 = seg.params
                vals = self.knots[i] + v0 * tau + 0.5 * slope * tau * tau
            else:
                coeff, rate = seg.params
                if rate == 0.0:
                    vals = self.knots[i] + coeff * tau
                else:
                    vals = self.knots[i] + coeff / rate * np.expm1(rate * tau)
            out[mask] = vals
        return float(out) if np.ndim(t) == 0 else out


def integrate_theta(profile: ControlProfile, theta0: float) -> ThetaPath:
    """Exact piecewise-analytic solution of theta' = u(t) with theta(0) = theta0."""
    return ThetaPath(profile, theta0)


def cost(profile: ControlProfile, theta0: float, spec: CostSpec) -> float:
    """Running cost of the profile, integrated in closed form per segment."""
    total = spec.time_weight * profile.t_final
    theta = theta0
    for seg in profile.segments:
        if spec.A:
            total += spec.A * seg.u_squared_integral()
        if spec.B:
            total += spec.B * seg.theta_squared_integral(theta)
        theta += seg.integral()
    return total


def theta_extrema(profile: ControlProfile, theta0: float) -> tuple[float, float]:
    """Exact (min, max) of theta over [0, t_final].

    Candidates are the segment knots plus interior times where u vanishes
    (only linear segments can cross zero in their interior).
    """
    path = ThetaPath(profile, theta0)
    lo = hi = theta0
    for i, seg in enumerate(profile.segments):
        for val in (path.knots[i], path.knots[i + 1]):
            lo, hi = min(lo, val), max(hi, val)
        if seg.kind == LINEAR:
            slope, v0 = seg.params
            if slope != 0.0:
                tau = -v0 / slope
                if 0.0 < tau < seg.duration:
                    val = path.knots[i] + v0 * tau + 0.5 * slope * tau * tau
                    lo, hi = min(lo, val), max(hi, val)
    return lo, hi


def extend(profile: ControlProfile, t_new: float) -> ControlProfile:
    """Continue the profile to time t_new by holding its final value constant."""
    tf = profile.t_final
    if t_new < tf - TIME_TOL:
        raise ProfileError(f"cannot extend to {t_new!r} before t_final={tf!r}")
    if t_new <= tf + TIME_TOL:
        return profile
    hold = profile.segments[-1].value_at_end if profile.segments else profile.u0
    return ControlProfile(
        segments=profile.segments + (Segment.constant(tf, t_new, hold),),
        eps=profile.eps,
        u0=profile.u0,
        declared_switches=profile.declared_switches,
        continuous=False,
    )


def concatenate(profiles: Sequence[ControlProfile]) -> ControlProfile:
    """Chain profiles end to end; jumps at the seams become declared switches."""
    parts = [p for p in profiles if not p.is_empty]
    if not parts:
        if not profiles:
            raise ProfileError("cannot concatenate an empty list of profiles")
        return profiles[0]
    eps, u0 = parts[0].eps, parts[0].u0
    for p in parts[1:]:
        if p.eps != eps or p.u0 != u0:
            raise ProfileError("profiles to concatenate must share eps and u0")
    segments: list[Segment] = []
    switches: list[float] = []
    offset = 0.0
    prev_end_value: float | None = None
    for p in parts:
        if prev_end_value is not None and abs(p.segments[0].value_at_start - prev_end_value) > JUNCTION_TOL:
            switches.append(offset)
        for s in p.segments:
            segments.append(Segment(s.t0 + offset, s.t1 + offset, s.kind, s.params))
        for t in p.declared_switches:
            ts = t + offset
            if not switches or ts > switches[-1]:
                switches.append(ts)
        prev_end_value = p.segments[-1].value_at_end
        offset += p.t_final
    continuous = all(p.continuous for p in parts) and all(
        abs(segments[i + 1].value_at_start - segments[i].value_at_end) <= JUNCTION_TOL
        for i in range(len(segments) - 1)
    )
    return ControlProfile(
        segments=tuple(segments),
        eps=eps,
        u0=u0,
        declared_switches=tuple(sorted(set(switches))),
        continuous=continuous,
    )


def _difference_roots(s1: Segment, s2: Segment, a: float, b: float) -> list[float]:
    """Times in (a, b) where the two segment formulas cross."""
    affine_kinds = (CONSTANT, LINEAR)
    if s1.kind in affine_kinds and s2.kind in affine_kinds:
        # expand both to global-affine form u = p + q t and subtract
        def affine(seg: Segment) -> tuple[float, float]:
            if seg.kind == CONSTANT:
                return seg.params[0], 0.0
            slope, v0 = seg.params
            return v0 - slope * seg.t0, slope

        p1, q1 = affine(s1)
        p2, q2 = affine(s2)
        dp, dq = p1 - p2, q1 - q2
        if dq == 0.0:
            return []
        r = -dp / dq
        return [r] if a < r < b else []
    # an exponential is involved: difference has at most two roots; isolate on
    # a subgrid and refine by bisection
    def d(t: float) -> float:
        return s1.value(t) - s2.value(t)

    grid = np.linspace(a, b, 33)
    vals = np.array([d(t) for t in grid])
    roots: list[float] = []
    for i in range(len(grid) - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0 and grid[i] > a:
            roots.append(float(grid[i]))
        elif va * vb < 0.0:
            roots.append(float(brentq(d, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-15)))
    return sorted(set(roots))


def l1_distance(p1: ControlProfile, p2: ControlProfile) -> float:
    """Exact integral of |u1 - u2| over the common horizon.

    The shorter profile is continued by holding its final value constant.
    Crossing points of the two controls are solved per segment pair so each
    sub-integral is of one sign and can use the closed-form antiderivatives.
    """
    horizon = max(p1.t_final, p2.t_final)
    if horizon == 0.0:
        return 0.0
    q1, q2 = extend(p1, horizon), extend(p2, horizon)
    breaks = {0.0, horizon}
    for q in (q1, q2):
        for s in q.segments:
            breaks.add(s.t0)
            breaks.add(s.t1)
    pts = sorted(b for b in breaks if -TIME_TOL <= b <= horizon + TIME_TOL)
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        if b - a <= TIME_TOL:
            continue
        mid = 0.5 * (a + b)
        s1 = q1.segments[q1.segment_index_at(mid)]
        s2 = q2.segments[q2.segment_index_at(mid)]
        cuts = [a] + _difference_roots(s1, s2, a, b) + [b]
        for x, y in zip(cuts, cuts[1:]):
            total += abs(s1.integral_between(x, y) - s2.integral_between(x, y))
    return total
