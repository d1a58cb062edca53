import math

import numpy as np
import pytest

from scallop.dynamics import SwimmerParams, net_displacement
from scallop.errors import NonMonotoneError, UnattainableTargetError
from scallop.planner import (
    CyclePlan,
    attainable_range,
    check_monotone,
    cycle_displacement,
    plan_cycles,
    solve_switch_angle,
    sweep,
    sweep_csv,
)
from scallop.profiles import CostSpec, ThetaPath

TH0 = math.pi / 6
EPS = 0.1

# frozen endpoints of the invertible displacement map from theta0 = pi/6
RANGE_LO = -7.329381004930033
RANGE_HI = 2.3229784721170086
THETA1_HALF = 1.1021683819280854  # switch angle whose cycle moves -5


def reversed_params() -> SwimmerParams:
    """A parameter set whose cycles push the swimmer the other way."""
    return SwimmerParams(a=2.0, b=0.5, xi=2.0, eta=1.0, m=1.0, m11=0.1, m22=2.0)


def tied_params() -> SwimmerParams:
    """Identical effective fluids: every cycle nets exactly zero."""
    return SwimmerParams(a=2.0, b=0.5, xi=1.0, eta=1.0, m11=0.5, m22=0.5)


class TestMonotone:
    def test_default_direction_is_decreasing(self, params):
        assert check_monotone(TH0, params) == -1

    def test_reversed_direction(self):
        assert check_monotone(TH0, reversed_params()) == 1

    def test_degenerate_fluids_raise(self):
        with pytest.raises(NonMonotoneError):
            check_monotone(TH0, tied_params())


class TestAttainableRange:
    def test_frozen_endpoints(self, params):
        lo, hi = attainable_range(TH0, params)
        assert lo == pytest.approx(RANGE_LO, abs=1e-9)
        assert hi == pytest.approx(RANGE_HI, abs=1e-9)

    def test_sorted_for_either_direction(self, params):
        lo, hi = attainable_range(TH0, reversed_params())
        assert lo < 0.0 < hi


class TestSolveSwitchAngle:
    def test_round_trip_on_a_target_grid(self, params):
        lo, hi = attainable_range(TH0, params)
        for target in np.linspace(lo + 1e-6, hi - 1e-6, 50):
            theta1 = solve_switch_angle(float(target), TH0, params)
            achieved = net_displacement(TH0, theta1, params)
            assert abs(achieved - float(target)) <= 1e-9 * max(1.0, abs(target))

    def test_frozen_half_distance_angle(self, params):
        assert solve_switch_angle(-5.0, TH0, params) == pytest.approx(THETA1_HALF, abs=1e-8)

    def test_zero_target_returns_base_angle(self, params):
        assert solve_switch_angle(0.0, TH0, params) == TH0

    def test_out_of_range_raises_with_bounds(self, params):
        with pytest.raises(UnattainableTargetError) as exc:
            solve_switch_angle(-50.0, TH0, params)
        err = exc.value
        assert err.target == -50.0
        assert err.lo == pytest.approx(RANGE_LO, abs=1e-6)
        assert err.hi == pytest.approx(RANGE_HI, abs=1e-6)
        with pytest.raises(UnattainableTargetError):
            solve_switch_angle(5.0, TH0, params)

    def test_works_for_reversed_direction(self):
        p = reversed_params()
        theta1 = solve_switch_angle(0.3, TH0, p)
        assert net_displacement(TH0, theta1, p) == pytest.approx(0.3, abs=1e-9)


class TestCycleDisplacement:
    def test_open_first_uses_net(self, params):
        th1 = 1.0
        assert cycle_displacement(TH0, th1, params) == pytest.approx(
            net_displacement(TH0, th1, params), rel=1e-13
        )

    def test_close_first_flips_sign(self, params):
        th1 = 0.3
        assert cycle_displacement(TH0, th1, params) == pytest.approx(
            -net_displacement(TH0, th1, params), rel=1e-13
        )

    def test_every_orientation_moves_backward(self, params):
        # the relay puts the ideal fluid on the opening leg in either order,
        # so the default swimmer always drifts the same way
        for th1 in np.linspace(0.05, math.pi / 2 - 0.05, 25):
            if abs(th1 - TH0) < 1e-9:
                continue
            assert cycle_displacement(TH0, float(th1), params) < 0.0


class TestSweep:
    def test_reference_rows_are_frozen(self, params):
        rows = sweep(-10.0, TH0, params, EPS, CostSpec(1.0, 0.0), 5, on_unattainable="nan")
        assert [r.n for r in rows] == [1, 2, 3, 4, 5]
        assert math.isnan(rows[0].J_n)  # -10 in one cycle is out of reach
        assert rows[1].theta1 == pytest.approx(THETA1_HALF, abs=1e-8)
        assert rows[1].total_time == pytest.approx(23.14278425319146, rel=1e-10)
        assert rows[1].J_n == pytest.approx(2.2314278425319145, rel=1e-10)
        assert rows[4].J_n == pytest.approx(5.238273189857098, rel=1e-10)

    def test_row_consistency(self, params):
        rows = sweep(-6.0, TH0, params, EPS, CostSpec(1.0, 0.0), 6)
        for r in rows:
            share = -6.0 / r.n
            assert net_displacement(TH0, r.theta1, params) == pytest.approx(share, abs=1e-8)
            assert r.per_cycle_time == pytest.approx(2.0 * abs(r.theta1 - TH0) / EPS, rel=1e-12)
            assert r.total_time == pytest.approx(r.n * r.per_cycle_time, rel=1e-12)
            # energy of the saturated bang plus one switching charge per cycle
            assert r.per_cycle_energy == pytest.approx(EPS**2 * r.per_cycle_time, rel=1e-12)
            assert r.J_n == pytest.approx(r.n * r.per_cycle_energy + r.n, rel=1e-12)

    def test_raise_policy(self, params):
        with pytest.raises(UnattainableTargetError):
            sweep(-10.0, TH0, params, EPS, CostSpec(1.0, 0.0), 5, on_unattainable="raise")
        with pytest.raises(ValueError):
            sweep(-6.0, TH0, params, EPS, CostSpec(1.0, 0.0), 5, on_unattainable="bogus")

    def test_time_cost_spec(self, params):
        rows = sweep(-6.0, TH0, params, EPS, CostSpec(0.0, 0.0, 1.0), 3)
        for r in rows:
            assert r.per_cycle_energy == 0.0
            assert r.J_n == pytest.approx(r.n, rel=1e-12)

    def test_csv_shape(self, params):
        rows = sweep(-6.0, TH0, params, EPS, CostSpec(1.0, 0.0), 3)
        text = sweep_csv(rows)
        lines = text.splitlines()
        assert lines[0] == "n,theta1,per_cycle_time,per_cycle_energy,total_time,J_n"
        assert len(lines) == 4
        assert lines[1].startswith("1,")


class TestPlanCycles:
    def test_zero_request(self, params):
        plan = plan_cycles(0.0, TH0, params, EPS)
        assert plan.dx_total == 0.0
        assert plan.profile.is_empty

    def test_minimal_cycle_count(self, params):
        plan = plan_cycles(-10.0, TH0, params, EPS)
        assert plan.n == 2
        assert plan.dx_total == -10.0
        assert plan.dx_per_cycle == pytest.approx(-5.0, rel=1e-12)
        assert plan.theta1 == pytest.approx(THETA1_HALF, abs=1e-8)

    def test_magnitude_is_honored_when_sign_is_unrealizable(self, params):
        # +10 cannot be reached by any cycle, so the plan swims -10
        plan = plan_cycles(10.0, TH0, params, EPS)
        assert plan.n == 2
        assert plan.dx_total == -10.0

    def test_single_cycle_when_reachable(self, params):
        plan = plan_cycles(-5.0, TH0, params, EPS)
        assert plan.n == 1
        path = ThetaPath(plan.profile, TH0)
        assert path.theta_final == pytest.approx(TH0, abs=1e-12)
        assert cycle_displacement(TH0, plan.theta1, params) == pytest.approx(-5.0, abs=1e-8)

    def test_positive_direction_with_reversed_params(self):
        p = reversed_params()
        plan = plan_cycles(1.0, TH0, p, EPS)
        assert plan.dx_total == 1.0
        assert plan.n >= 2  # single-cycle reach tops out near 0.7

    def test_profile_spans_all_cycles(self, params):
        plan = plan_cycles(-10.0, TH0, params, EPS)
        assert plan.profile.t_final == pytest.approx(plan.n * plan.solution.t_f, rel=1e-12)
        assert plan.total_time == pytest.approx(plan.profile.t_final, rel=1e-12)

    def test_cap_on_cycle_count(self, params):
        with pytest.raises(UnattainableTargetError):
            plan_cycles(1e9, TH0, params, EPS, max_cycles=1000)

    def test_plan_is_a_frozen_record(self, params):
        plan = plan_cycles(-5.0, TH0, params, EPS)
        assert isinstance(plan, CyclePlan)
        with pytest.raises(Exception):
            plan.n = 3
