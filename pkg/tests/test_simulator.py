import math

import numpy as np
import pytest

from scallop.dynamics import FluidRegime, net_displacement, v_ideal, v_viscous
from scallop.errors import DomainExitError
from scallop.mintime import approximate, synthesize
from scallop.planner import plan_cycles
from scallop.profiles import ControlProfile, Segment
from scallop.simulator import Trajectory, VerifyReport, simulate, verify

TH0 = math.pi / 6
TH1 = math.pi / 3
EPS = 0.1
I = FluidRegime.IDEAL
V = FluidRegime.VISCOUS


@pytest.fixture
def cycle(params):
    return synthesize(TH0, TH1, EPS)


def test_displacement_matches_quadrature(params, cycle):
    tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-4)
    ref = net_displacement(TH0, TH1, params, tol=1e-13)
    assert abs(tr.displacement - ref) < 1e-9


def test_trajectory_bookkeeping(params, cycle):
    tr = simulate(cycle.profile, params, 1.5, TH0, I, h=1e-3)
    assert tr.t[0] == 0.0
    assert tr.t[-1] == pytest.approx(cycle.t_f, abs=1e-12)
    assert tr.x[0] == 1.5
    assert tr.theta[0] == TH0
    assert tr.final_x - 1.5 == pytest.approx(tr.displacement, rel=1e-12)
    assert tr.final_theta == pytest.approx(TH0, abs=1e-10)
    assert np.all(np.diff(tr.t) > 0)
    assert set(np.unique(tr.w)) <= {1, 2}


def test_switch_events_and_regime_column(params, cycle):
    tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-3)
    assert len(tr.switch_events) == 1
    t_sw, w_old, w_new = tr.switch_events[0]
    assert t_sw == pytest.approx(cycle.t1, abs=1e-12)
    assert (w_old, w_new) == (I, V)
    # the recorded regime is right-continuous at the event row
    idx = int(np.argmin(np.abs(tr.t - t_sw)))
    assert tr.t[idx] == pytest.approx(t_sw, abs=1e-12)
    assert tr.w[idx] == 1
    assert tr.final_w == V
    for t, w in zip(tr.t, tr.w):
        assert w == int(tr.signal.regime_at(float(t)))


def test_close_first_cycle_flips_the_sign(params):
    sol = synthesize(TH1, TH0, EPS)
    tr = simulate(sol.profile, params, 0.0, TH1, I, h=1e-4)
    ref = -net_displacement(TH1, TH0, params, tol=1e-13)
    assert abs(tr.displacement - ref) < 1e-9


def test_frozen_regime_cycle_nets_nothing(params):
    # a sub-threshold excursion never trips the relay, so the motion cancels
    u = 0.09
    segs = (Segment.constant(0.0, 3.0, u), Segment.constant(3.0, 6.0, -u))
    prof = ControlProfile(segs, EPS, u)
    for w0 in (I, V):
        tr = simulate(prof, params, 0.0, TH0, w0, h=1e-4)
        assert tr.switch_events == ()
        assert abs(tr.displacement) < 1e-9


def test_fourth_order_convergence(params, cycle):
    ref = net_displacement(TH0, TH1, params, tol=1e-13)
    errs = []
    for h in (0.8, 0.4, 0.2, 0.1):
        tr = simulate(cycle.profile, params, 0.0, TH0, I, h=h)
        errs.append(abs(tr.displacement - ref))
    for coarse, fine in zip(errs, errs[1:]):
        assert coarse / fine >= 8.0


def test_ramped_profile_switches_through_the_relay(params):
    ap = approximate(TH1, TH0, EPS, 0.0, 100.0)
    tr = simulate(ap.profile, params, 0.0, TH1, I, h=1e-4)
    assert len(tr.switch_events) == 2
    t_first = tr.switch_events[0][0]
    assert t_first == pytest.approx(0.01, abs=1e-12)  # end of the entry ramp
    assert tr.switch_events[0][2] == V
    assert tr.switch_events[1][2] == I


def test_multi_cycle_plan(params):
    plan = plan_cycles(-10.0, TH0, params, EPS)
    tr = simulate(plan.profile, params, 0.0, TH0, I, h=1e-4)
    assert abs(tr.displacement - (-10.0)) < 1e-6
    assert len(tr.switch_events) == 2 * plan.n - 1


def test_domain_exit(params):
    segs = (Segment.constant(0.0, 3.0, EPS),)
    prof = ControlProfile(segs, EPS, EPS)
    with pytest.raises(DomainExitError) as exc:
        simulate(prof, params, 0.0, 1.4, I, h=1e-3)
    err = exc.value
    assert err.theta > math.pi / 2 - 1e-6
    assert 0.0 < err.t <= 3.0


def test_sample_cap_preserves_events(params):
    plan = plan_cycles(-10.0, TH0, params, EPS)
    tr = simulate(plan.profile, params, 0.0, TH0, I, h=1e-5)
    assert len(tr.t) <= 100_001
    for t_sw, _, _ in tr.switch_events:
        assert np.any(np.isclose(tr.t, t_sw, atol=1e-12))


def test_empty_profile(params):
    prof = ControlProfile((), EPS, 0.0)
    tr = simulate(prof, params, 2.0, TH0, I, h=1e-3)
    assert tr.t_final == 0.0
    assert len(tr.t) == 1
    assert tr.displacement == 0.0


def test_x_rates_match_regimes(params, cycle):
    # finite-difference velocity along the trajectory tracks the active fluid
    tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-4)
    idx = len(tr.t) // 4  # inside the opening leg, regime 2
    dt = tr.t[idx + 1] - tr.t[idx]
    v_num = (tr.x[idx + 1] - tr.x[idx]) / dt
    v_exp = v_ideal(0.5 * (tr.theta[idx] + tr.theta[idx + 1]), params) * tr.u[idx]
    assert v_num == pytest.approx(v_exp, rel=1e-5)
    idx = 3 * len(tr.t) // 4  # closing leg, regime 1
    dt = tr.t[idx + 1] - tr.t[idx]
    v_num = (tr.x[idx + 1] - tr.x[idx]) / dt
    v_exp = v_viscous(0.5 * (tr.theta[idx] + tr.theta[idx + 1]), params) * tr.u[idx]
    assert v_num == pytest.approx(v_exp, rel=1e-5)


def test_csv_outputs(params, cycle):
    tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-2)
    lines = tr.to_csv().splitlines()
    assert lines[0] == "t,x,theta,u,w"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[2]) == pytest.approx(TH0)
    assert tr.events_csv().splitlines()[0] == "t,w_old,w_new"
    assert len(tr.events_csv().splitlines()) == 2


class TestVerify:
    def test_pass(self, params, cycle):
        tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-4)
        ref = net_displacement(TH0, TH1, params)
        rep = verify(tr, ref, 1e-6)
        assert rep.passed
        assert rep.summary().startswith("PASS:")
        assert rep.switch_count == 1
        assert rep.max_constraint_violation <= 0.0

    def test_fail(self, params, cycle):
        tr = simulate(cycle.profile, params, 0.0, TH0, I, h=1e-4)
        rep = verify(tr, 0.0, 1e-6)
        assert not rep.passed
        assert rep.summary().startswith("FAIL:")
        assert isinstance(rep, VerifyReport)
