import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailsitter_lab.airfoil import AeroForces
from tailsitter_lab.controller import (
    DegenerateForce,
    GeometricController,
    TrajectoryPoint,
    attitude_error,
    attitude_moment,
    collective_thrust,
    desired_accel,
    desired_attitude,
    desired_force,
    distribute_thrust,
    wrap_angle,
)
from tailsitter_lab.dynamics import ControlInput, State
from tailsitter_lab.params import Gains, VehicleParams

NO_AERO = AeroForces(0.0, 0.0, 0.0)
TABLE_GAINS = Gains(kp_y=11.6, kp_z=17.4, kd_y=6.82, kd_z=6.82)
MG = 0.8652 * 9.81


def ref_point(r=(0.0, 0.0), r_dot=(0.0, 0.0), r_ddot=(0.0, 0.0)):
    return TrajectoryPoint(0.0, r, r_dot, r_ddot)


class TestDesiredAccel:
    def test_zero_error_feedforward_passthrough(self):
        state = State(1.0, 2.0, 0.5, 3.0, 4.0, 0.0)
        ref = ref_point(r=(1.0, 2.0), r_dot=(3.0, 4.0), r_ddot=(0.7, -0.2))
        assert desired_accel(state, ref, TABLE_GAINS) == pytest.approx((0.7, -0.2))

    def test_position_error_gain(self):
        state = State(1.0, 0.0, 0.5, 0.0, 0.0, 0.0)
        accel = desired_accel(state, ref_point(), TABLE_GAINS)
        assert accel == pytest.approx((-11.6, 0.0))

    def test_velocity_error_gain(self):
        state = State(0.0, 0.0, 0.5, 0.0, 1.0, 0.0)
        accel = desired_accel(state, ref_point(), TABLE_GAINS)
        assert accel == pytest.approx((0.0, -6.82))


class TestDesiredForce:
    def test_hover_gravity_compensation(self, params):
        force = desired_force((0.0, 0.0), 0.5 * math.pi, params, NO_AERO, 0.0)
        assert force == pytest.approx((0.0, MG))
        assert force[1] == pytest.approx(8.4876, abs=1e-4)

    def test_level_cruise_lift_cancels_weight(self, params):
        aero = AeroForces(lift=MG, drag=1.7, pitch_moment=0.0)
        # theta - alpha_e = 0: airflow frame aligned with inertial axes
        force = desired_force((0.0, 0.0), 0.3, params, aero, 0.3)
        assert force == pytest.approx((1.7, 0.0), abs=1e-12)

    def test_feedforward_acceleration(self, params):
        force = desired_force((1.0, 0.0), 0.5 * math.pi, params, NO_AERO, 0.0)
        assert force == pytest.approx((0.8652, MG))


class TestCollectiveThrust:
    def test_aligned(self):
        assert collective_thrust((0.0, MG), 0.5 * math.pi) == pytest.approx(MG)

    def test_orthogonal(self):
        assert collective_thrust((0.0, MG), 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_projection(self):
        assert collective_thrust((1.0, 1.0), 0.25 * math.pi) == pytest.approx(math.sqrt(2.0))


class TestDesiredAttitude:
    def test_hover(self):
        b2, theta = desired_attitude((0.0, MG))
        assert b2 == pytest.approx((0.0, 1.0))
        assert theta == pytest.approx(0.5 * math.pi)

    def test_level(self):
        assert desired_attitude((1.0, 0.0))[1] == pytest.approx(0.0)

    def test_diagonal(self):
        assert desired_attitude((1.0, 1.0))[1] == pytest.approx(0.25 * math.pi)

    def test_degenerate(self):
        with pytest.raises(DegenerateForce):
            desired_attitude((0.0, 1e-12))


class TestAttitudeMoment:
    def test_equilibrium(self, params, gains):
        state = State(0.0, 0.0, 0.5 * math.pi, 0.0, 0.0, 0.0)
        u2, e = attitude_moment(state, 0.5 * math.pi, 0.0, gains, params)
        assert u2 == 0.0 and e == 0.0

    def test_proportional_term(self, params, gains):
        state = State(0.0, 0.0, 0.6, 0.0, 0.0, 0.0)
        u2, e = attitude_moment(state, 0.5, 0.0, gains, params)
        assert e == pytest.approx(0.1)
        assert u2 == pytest.approx(-9.77e-3 * 74.73 * 0.1, rel=1e-12)
        assert u2 == pytest.approx(-0.0730, abs=5e-5)

    def test_aero_moment_cancellation(self, params, gains):
        state = State(0.0, 0.0, 0.5, 0.0, 0.0, 0.0)
        u2, _ = attitude_moment(state, 0.5, 0.5, gains, params)
        assert u2 == pytest.approx(-0.5)

    def test_error_continuous_across_wrap(self):
        # crossing +-pi in small steps must not produce 2 pi jumps
        prev = None
        for k in range(-30, 31):
            theta = math.pi + 0.01 * k
            e = attitude_error(theta, math.pi - 0.2)
            if prev is not None:
                assert abs(e - prev) < 0.05
            prev = e


class TestDistributeThrust:
    def test_symmetric(self, params):
        assert distribute_thrust(10.0, 0.0, params) == pytest.approx((5.0, 5.0))

    def test_moment_split(self, params):
        assert distribute_thrust(8.0, 0.488, params) == pytest.approx((3.0, 5.0))

    @settings(max_examples=60, deadline=None)
    @given(t_top=st.floats(-5, 10), t_bottom=st.floats(-5, 10))
    def test_round_trip_identity(self, t_top, t_bottom):
        p = VehicleParams()
        u1 = t_top + t_bottom
        u2 = p.l * (t_bottom - t_top)
        back = distribute_thrust(u1, u2, p)
        assert back.t_top == pytest.approx(t_top, abs=1e-12)
        assert back.t_bottom == pytest.approx(t_bottom, abs=1e-12)

    def test_wrench_consistency(self, params):
        out = distribute_thrust(7.3, -0.91, params)
        assert out.t_top + out.t_bottom == pytest.approx(7.3, abs=1e-9)
        assert params.l * (out.t_bottom - out.t_top) == pytest.approx(-0.91, abs=1e-9)


class TestGainRelations:
    def test_critical_damping_consistency(self, gains):
        # the Table pairs (11.6, 6.82) and (74.73, 17.29) are critically damped
        assert abs(2.0 * math.sqrt(11.6) - 6.82) / 6.82 < 0.002
        assert abs(2.0 * math.sqrt(gains.k_r) - gains.k_omega) / gains.k_omega < 0.002

    def test_from_natural_frequency(self):
        g = Gains.from_natural_frequency(3.0, 4.0, 9.0, zeta=1.0)
        assert g.kp_y == pytest.approx(9.0)
        assert g.kd_y == pytest.approx(6.0)
        assert g.k_r == pytest.approx(81.0)
        assert g.k_omega == pytest.approx(18.0)


class TestClosedController:
    def test_hover_equilibrium_command(self, params, gains, naca_spline):
        ctrl = GeometricController(gains, params, naca_spline)
        state = State(0.0, 0.0, 0.5 * math.pi, 0.0, 0.0, 0.0)
        out = ctrl.update(state, ref_point(), NO_AERO, ControlInput(0.5 * MG, 0.5 * MG))
        assert out.theta_des == pytest.approx(0.5 * math.pi, abs=1e-6)
        assert out.u1 == pytest.approx(MG, rel=1e-6)
        assert out.t_top == pytest.approx(out.t_bottom, abs=1e-9)
        assert out.t_top + out.t_bottom == pytest.approx(out.u1, abs=1e-9)

    def test_wrench_invariant(self, params, gains, naca_spline):
        ctrl = GeometricController(gains, params, naca_spline)
        state = State(0.3, -0.2, 1.1, 2.0, 0.5, 0.1)
        aero = AeroForces(0.4, 0.2, -0.01)
        out = ctrl.update(state, ref_point(r_dot=(2.5, 0.0)), aero, ControlInput(2.0, 2.0))
        assert out.t_top + out.t_bottom == pytest.approx(out.u1, abs=1e-9)
        assert params.l * (out.t_bottom - out.t_top) == pytest.approx(out.u2, abs=1e-9)


class TestWrapAngle:
    @settings(max_examples=80, deadline=None)
    @given(angle=st.floats(-50.0, 50.0))
    def test_range_and_equivalence(self, angle):
        w = wrap_angle(angle)
        assert -math.pi < w <= math.pi
        assert math.isclose(math.sin(w), math.sin(angle), abs_tol=1e-9)
        assert math.isclose(math.cos(w), math.cos(angle), abs_tol=1e-9)
