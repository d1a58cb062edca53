"""Delayed two-state relay between fluid regimes.

The relay keeps its regime until the control attains a threshold: in the
ideal regime (w=2) it drops to viscous (w=1) once u <= -eps, and in the
viscous regime it rises back once u >= +eps. Both comparisons are closed,
so controls that ride exactly at +-eps do trigger switches. Crossing times
on piecewise-analytic controls are located in closed form per segment.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .dynamics import FluidRegime
from .errors import ControlBoundError, ProfileError
from .profiles import CONSTANT, EXPONENTIAL, LINEAR, ControlProfile, Segment

# Values within this distance of a threshold count as attaining it, which
# absorbs rounding in ramps built to land exactly on +-eps.
VALUE_TOL = 1e-12


@dataclass(frozen=True)
class RelayState:
    """Current regime w and the switching threshold eps of the relay."""

    w: FluidRegime
    eps: float

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise ValueError(f"relay threshold eps must be positive, got {self.eps!r}")
        object.__setattr__(self, "w", FluidRegime(self.w))


def _other(w: FluidRegime) -> FluidRegime:
    return FluidRegime.VISCOUS if w == FluidRegime.IDEAL else FluidRegime.IDEAL


def _attained(w: FluidRegime, u: float, eps: float) -> bool:
    """Closed-comparison threshold test for the switch armed in regime w."""
    if w == FluidRegime.IDEAL:
        return u <= -eps + VALUE_TOL
    return u >= eps - VALUE_TOL


def step(state: RelayState, u: float) -> RelayState:
    """Feed one control value to the relay and return the successor state."""
    if abs(u) > state.eps + VALUE_TOL:
        raise ControlBoundError(f"control {u!r} violates |u| <= eps with eps={state.eps!r}")
    if _attained(state.w, u, state.eps):
        return RelayState(_other(state.w), state.eps)
    return state


@dataclass(frozen=True)
class RegimeSignal:
    """Piecewise-constant regime history: initial regime plus (time, new regime) switches.

    The regime is right-continuous: at a switch instant the new regime is
    already in effect.
    """

    initial: FluidRegime
    switches: tuple[tuple[float, FluidRegime], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial", FluidRegime(self.initial))
        object.__setattr__(
            self, "switches", tuple((float(t), FluidRegime(w)) for t, w in self.switches)
        )
        prev_t, prev_w = -math.inf, self.initial
        for t, w in self.switches:
            if not t > prev_t:
                raise ValueError(f"switch times must be strictly increasing, got {t!r}")
            if w == prev_w:
                raise ValueError(f"consecutive switches must alternate regimes, got {w!r} twice")
            prev_t, prev_w = t, w

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.switches)

    @property
    def final(self) -> FluidRegime:
        return self.switches[-1][1] if self.switches else self.initial

    def regime_at(self, t: float) -> FluidRegime:
        """Regime in effect at time t (new regime counts from the switch instant)."""
        i = bisect_right(self.times, t)
        return self.initial if i == 0 else self.switches[i - 1][1]

    def truncated(self, t: float) -> "RegimeSignal":
        """The signal restricted to switches at times <= t."""
        return RegimeSignal(self.initial, tuple(sw for sw in self.switches if sw[0] <= t))

    def to_csv(self) -> str:
        lines = [f"# initial_w={int(self.initial)}", "t_switch,w_new"]
        for t, w in self.switches:
            lines.append(f"{t!r},{int(w)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "RegimeSignal":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("# initial_w="):
            raise ValueError("regime CSV must start with '# initial_w=' metadata")
        initial = FluidRegime(int(lines[0].split("=", 1)[1]))
        if len(lines) < 2 or lines[1] != "t_switch,w_new":
            raise ValueError("regime CSV missing 't_switch,w_new' header")
        switches = []
        for ln in lines[2:]:
            t_str, w_str = ln.split(",")
            switches.append((float(t_str), FluidRegime(int(w_str))))
        return cls(initial, tuple(switches))


def _first_attainment(
    seg: Segment,
    w: FluidRegime,
    eps: float,
    lo: float,
    include_lo: bool,
    include_end: bool,
) -> float | None:
    """Earliest time in the segment (at or after lo) where the armed threshold fires.

    The segment is treated as governing [t0, t1); its right endpoint counts
    only when include_end is set (the final segment of a profile), since at
    interior junctions the next segment's start value takes over.
    """
    target = -eps if w == FluidRegime.IDEAL else eps
    if include_lo and _attained(w, seg.value(lo), eps):
        return lo
    t_star: float | None = None
    if seg.kind == LINEAR:
        slope, v0 = seg.params
        if slope != 0.0:
            t_star = seg.t0 + (target - v0) / slope
    elif seg.kind == EXPONENTIAL:
        coeff, rate = seg.params
        if rate != 0.0 and coeff != 0.0 and target / coeff > 0.0:
            t_star = seg.t0 + math.log(target / coeff) / rate
    # constant segments fire only via the lo check above
    if t_star is not None and lo < t_star < seg.t1:
        return t_star
    if include_end and seg.t1 > lo and _attained(w, seg.value_at_end, eps):
        return seg.t1
    return None


def _scan_segments(initial: RelayState, segments: Sequence[Segment]) -> RegimeSignal:
    eps = initial.eps
    w = initial.w
    switches: list[tuple[float, FluidRegime]] = []
    for i, seg in enumerate(segments):
        if abs(seg.value_at_start) > eps + VALUE_TOL or abs(seg.value_at_end) > eps + VALUE_TOL:
            raise ControlBoundError(
                f"control leaves [-eps, eps] with eps={eps!r} on segment [{seg.t0!r}, {seg.t1!r}]"
            )
        is_last = i == len(segments) - 1
        lo, include_lo = seg.t0, True
        while True:
            hit = _first_attainment(seg, w, eps, lo, include_lo, include_end=is_last)
            if hit is None:
                break
            w = _other(w)
            switches.append((hit, w))
            lo, include_lo = hit, False
    return RegimeSignal(initial.w, tuple(switches))


def evolve(initial: RelayState, profile: ControlProfile) -> RegimeSignal:
    """Regime signal produced by feeding the whole profile through the relay.

    Deterministic and causal: the result on [0, s] depends only on the
    control restricted to [0, s]. Threshold crossings are solved exactly per
    segment kind. The degenerate empty profile only applies the t=0 value u0.
    """
    if profile.is_empty:
        sig = RegimeSignal(initial.w)
        if _attained(initial.w, profile.u0, initial.eps):
            sig = RegimeSignal(initial.w, ((0.0, _other(initial.w)),))
        return sig
    return _scan_segments(initial, profile.segments)


def evolve_sampled(initial: RelayState, times: Sequence[float], values: Sequence[float]) -> RegimeSignal:
    """Relay response to a sampled control, linearly interpolated between samples."""
    if len(times) != len(values) or len(times) == 0:
        raise ProfileError("sampled control needs matching nonempty times and values")
    for a, b in zip(times, times[1:]):
        if not b > a:
            raise ProfileError("sample times must be strictly increasing")
    if len(times) == 1:
        w = initial.w
        if abs(values[0]) > initial.eps + VALUE_TOL:
            raise ControlBoundError(f"control {values[0]!r} violates |u| <= eps")
        if _attained(w, values[0], initial.eps):
            return RegimeSignal(w, ((float(times[0]), _other(w)),))
        return RegimeSignal(w)
    segments = []
    for i in range(len(times) - 1):
        dt = times[i + 1] - times[i]
        slope = (values[i + 1] - values[i]) / dt
        segments.append(Segment.linear(times[i], times[i + 1], slope, values[i]))
    return _scan_segments(initial, segments)
