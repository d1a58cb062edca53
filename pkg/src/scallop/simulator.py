"""Forward integration of the hybrid swimmer system x' = V_w(theta)u, theta' = u.

Classic fixed-step RK4, restarted exactly at every discontinuity: segment
boundaries, declared control jumps, and relay switch times (all known in
closed form), so no integration step ever straddles a kink. Within one
block the control is a single analytic formula and the regime is constant,
which lets every stage value be precomputed and the whole block advanced
with vectorized prefix sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import THETA_GUARD, FluidRegime, SwimmerParams, v_ideal, v_viscous
from .errors import DomainExitError
from .hysteresis import RegimeSignal, RelayState, evolve
from .profiles import ControlProfile, Segment

# Trajectories keep at most this many thinned samples (plus event points).
_MAX_SAMPLES = 100_000
DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class Trajectory:
    """Sampled hybrid trajectory plus its exact switch events.

    Arrays t, x, theta, u, w are aligned samples; at a discontinuity the
    row carries the right-limit control and regime (the final row, having
    no right limit, carries the left limit). switch_events lists
    (time, w_old, w_new) exactly as produced by the relay.
    """

    t: np.ndarray
    x: np.ndarray
    theta: np.ndarray
    u: np.ndarray
    w: np.ndarray
    switch_events: tuple[tuple[float, FluidRegime, FluidRegime], ...]
    signal: RegimeSignal
    eps: float
    step: float

    @property
    def t_final(self) -> float:
        return float(self.t[-1])

    @property
    def final_x(self) -> float:
        return float(self.x[-1])

    @property
    def final_theta(self) -> float:
        return float(self.theta[-1])

    @property
    def final_w(self) -> FluidRegime:
        return FluidRegime(int(self.w[-1]))

    @property
    def displacement(self) -> float:
        return float(self.x[-1] - self.x[0])

    def to_csv(self) -> str:
        lines = ["t,x,theta,u,w"]
        for i in range(len(self.t)):
            lines.append(
                f"{float(self.t[i])!r},{float(self.x[i])!r},{float(self.theta[i])!r},"
                f"{float(self.u[i])!r},{int(self.w[i])}"
            )
        return "\n".join(lines) + "\n"

    def events_csv(self) -> str:
        lines = ["t,w_old,w_new"]
        for t, w_old, w_new in self.switch_events:
            lines.append(f"{t!r},{int(w_old)},{int(w_new)}")
        return "\n".join(lines) + "\n"


def _guard_theta(values: np.ndarray, times: np.ndarray) -> None:
    lo = THETA_GUARD
    hi = math.pi / 2.0 - THETA_GUARD
    bad = (values < lo) | (values > hi)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainExitError(float(times[i]), float(values[i]))


def _block(
    seg: Segment,
    vfun,
    ta: float,
    tb: float,
    h: float,
    x0: float,
    th0: float,
):
    """Advance one smooth block [ta, tb] by vectorized RK4; returns node arrays."""
    span = tb - ta
    steps = max(1, int(math.ceil(span / h - 1e-12)))
    hs = span / steps
    t_nodes = ta + hs * np.arange(steps + 1)
    t_nodes[-1] = tb
    u_nodes = np.asarray(seg.value(t_nodes), dtype=float)
    u_half = np.asarray(seg.value(t_nodes[:-1] + 0.5 * hs), dtype=float)
    # theta' = u(t) is state-free, so RK4 for theta collapses to Simpson
    dth = hs / 6.0 * (u_nodes[:-1] + 4.0 * u_half + u_nodes[1:])
    th_nodes = th0 + np.concatenate(([0.0], np.cumsum(dth)))
    th_a = th_nodes[:-1]
    th_k2 = th_a + 0.5 * hs * u_nodes[:-1]
    th_k3 = th_a + 0.5 * hs * u_half
    th_k4 = th_a + hs * u_half
    _guard_theta(th_nodes, t_nodes)
    for stage in (th_k2, th_k3, th_k4):
        _guard_theta(stage, t_nodes[:-1])
    k1 = vfun(th_a) * u_nodes[:-1]
    k2 = vfun(th_k2) * u_half
    k3 = vfun(th_k3) * u_half
    k4 = vfun(th_k4) * u_nodes[1:]
    dx = hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    x_nodes = x0 + np.concatenate(([0.0], np.cumsum(dx)))
    return t_nodes, x_nodes, th_nodes, u_nodes


def simulate(
    profile: ControlProfile,
    p: SwimmerParams,
    x0: float,
    theta0: float,
    w0: FluidRegime,
    h: float = DEFAULT_STEP,
) -> Trajectory:
    """Integrate the hybrid system driven by the profile from (x0, theta0, w0).

    The relay response is computed first (exactly), then RK4 runs between
    consecutive events with the regime held constant. theta must stay
    within the guarded open interval throughout or DomainExitError is
    raised at the first violation.
    """
    if not h > 0:
        raise ValueError(f"step size h must be positive, got {h!r}")
    state0 = RelayState(FluidRegime(w0), profile.eps)
    signal = evolve(state0, profile)
    t_f = profile.t_final
    if profile.is_empty:
        _guard_theta(np.array([float(theta0)]), np.array([0.0]))
        w_now = signal.regime_at(0.0)
        events = _events_of(signal)
        one = np.array([0.0])
        return Trajectory(
            t=one, x=np.array([float(x0)]), theta=np.array([float(theta0)]),
            u=np.array([profile.u0]), w=np.array([int(w_now)]),
            switch_events=events, signal=signal, eps=profile.eps, step=h,
        )
    cuts = {0.0, t_f}
    for seg in profile.segments:
        cuts.add(seg.t0)
        cuts.add(seg.t1)
    cuts.update(profile.declared_switches)
    cuts.update(t for t in signal.times if 0.0 <= t <= t_f)
    times = sorted(cuts)
    stride = max(1, math.ceil(t_f / h / _MAX_SAMPLES))
    parts_t: list[np.ndarray] = []
    parts_x: list[np.ndarray] = []
    parts_th: list[np.ndarray] = []
    parts_u: list[np.ndarray] = []
    parts_w: list[np.ndarray] = []
    x_now, th_now = float(x0), float(theta0)
    global_step = 0
    for bi in range(len(times) - 1):
        ta, tb = times[bi], times[bi + 1]
        if tb - ta <= 1e-15:
            continue
        mid = 0.5 * (ta + tb)
        seg = profile.segments[profile.segment_index_at(mid)]
        w_now = signal.regime_at(mid)
        vfun = (lambda th: v_viscous(th, p)) if w_now == FluidRegime.VISCOUS else (
            lambda th: v_ideal(th, p)
        )
        t_n, x_n, th_n, u_n = _block(seg, vfun, ta, tb, h, x_now, th_now)
        x_now, th_now = float(x_n[-1]), float(th_n[-1])
        n_nodes = len(t_n)
        keep = (global_step + np.arange(n_nodes)) % stride == 0
        keep[0] = True
        keep[-1] = True
        last = bi == len(times) - 2
        if not last:
            # the shared boundary node is emitted by the next block, which
            # carries the right-limit control and regime there
            keep[-1] = False
        parts_t.append(t_n[keep])
        parts_x.append(x_n[keep])
        parts_th.append(th_n[keep])
        parts_u.append(u_n[keep])
        parts_w.append(np.full(int(np.count_nonzero(keep)), int(w_now)))
        global_step += n_nodes - 1
    t_all = np.concatenate(parts_t)
    x_all = np.concatenate(parts_x)
    th_all = np.concatenate(parts_th)
    u_all = np.concatenate(parts_u)
    w_all = np.concatenate(parts_w).astype(int)
    w_all[-1] = int(signal.regime_at(t_f))
    return Trajectory(
        t=t_all, x=x_all, theta=th_all, u=u_all, w=w_all,
        switch_events=_events_of(signal), signal=signal, eps=profile.eps, step=h,
    )


def _events_of(signal: RegimeSignal) -> tuple[tuple[float, FluidRegime, FluidRegime], ...]:
    events = []
    w_prev = signal.initial
    for t, w_new in signal.switches:
        events.append((t, w_prev, w_new))
        w_prev = w_new
    return tuple(events)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking a simulated trajectory against an expected displacement."""

    expected_dx: float
    achieved_dx: float
    error: float
    tol: float
    passed: bool
    max_constraint_violation: float
    switch_count: int

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict}: displacement {self.achieved_dx!r} vs expected {self.expected_dx!r} "
            f"(|error|={self.error!r}, tol={self.tol!r}, switches={self.switch_count}, "
            f"max |u|-eps={self.max_constraint_violation!r})"
        )


def verify(traj: Trajectory, expected_dx: float, tol: float) -> VerifyReport:
    """Compare the trajectory's displacement with expected_dx at tolerance tol."""
    achieved = traj.displacement
    error = abs(achieved - expected_dx)
    violation = max(0.0, float(np.max(np.abs(traj.u))) - traj.eps) if len(traj.u) else 0.0
    return VerifyReport(
        expected_dx=float(expected_dx),
        achieved_dx=achieved,
        error=error,
        tol=float(tol),
        passed=bool(error <= tol),
        max_constraint_violation=violation,
        switch_count=len(traj.switch_events),
    )
