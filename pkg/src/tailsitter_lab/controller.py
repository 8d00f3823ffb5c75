"""Cascaded geometric trajectory-tracking controller.

Position loop: PD + feedforward acceleration gives a desired inertial
force vector (gravity and aerodynamics compensated). Collective thrust is
the projection of that force onto the thrust axis; the desired attitude
aligns the thrust axis with the force. Attitude loop: PD on the signed
angle error with the aerodynamic pitching moment cancelled. Differential
thrust realizes the moment through the arm length.

The aerodynamic compensation inside the force command is evaluated at the
reference velocity and the solved attitude command, not at the measured
state: near wing-borne trim the net force is tiny, and closing the
instantaneous lift into the force direction multiplies attitude
perturbations by dL/dalpha / |F| (hundreds), which is unstable at the
100 Hz control rate. The measured state still drives the PD terms and the
pitching-moment cancellation, and both evaluations coincide at trim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .airfoil import AeroForces, aero_forces, eval_coeffs
from .airflow import wing_airflow
from .dynamics import ControlInput, State
from .params import Gains, VehicleParams

_FORCE_EPS = 1e-9


class DegenerateForce(ValueError):
    """Desired force too small to define an attitude."""


@dataclass(frozen=True)
class TrajectoryPoint:
    """Reference sample: position, velocity, acceleration at time t."""

    t: float
    r: tuple[float, float]
    r_dot: tuple[float, float]
    r_ddot: tuple[float, float]


@dataclass(frozen=True)
class ControllerOutput:
    """Wrenches, per-set thrusts, and diagnostics for one control step."""

    u1: float
    u2: float
    t_top: float
    t_bottom: float
    f_des: tuple[float, float]
    b2_des: tuple[float, float]
    theta_des: float
    e_theta: float


def desired_accel(state: State, ref: TrajectoryPoint, gains: Gains) -> tuple[float, float]:
    """PD-corrected feedforward acceleration."""
    ay = ref.r_ddot[0] - gains.kd_y * (state.y_dot - ref.r_dot[0]) - gains.kp_y * (state.y - ref.r[0])
    az = ref.r_ddot[1] - gains.kd_z * (state.z_dot - ref.r_dot[1]) - gains.kp_z * (state.z - ref.r[1])
    return ay, az


def desired_force(
    r_ddot_des: tuple[float, float],
    theta: float,
    params: VehicleParams,
    forces: AeroForces,
    alpha_e: float,
) -> tuple[float, float]:
    """Force the thrust must supply: F = m a_des + W - R(theta - alpha_e) (-D, L)."""
    phi = theta - alpha_e
    cos_p = math.cos(phi)
    sin_p = math.sin(phi)
    aero_y = -forces.drag * cos_p - forces.lift * sin_p
    aero_z = -forces.drag * sin_p + forces.lift * cos_p
    return (
        params.m * r_ddot_des[0] - aero_y,
        params.m * r_ddot_des[1] + params.weight - aero_z,
    )


def collective_thrust(f_des: tuple[float, float], theta: float) -> float:
    """Projection of the desired force onto the thrust axis b2."""
    return math.cos(theta) * f_des[0] + math.sin(theta) * f_des[1]


def desired_attitude(f_des: tuple[float, float]) -> tuple[tuple[float, float], float]:
    """Unit direction of the desired force and its angle."""
    norm = math.hypot(f_des[0], f_des[1])
    if norm <= _FORCE_EPS:
        raise DegenerateForce("desired force is numerically zero")
    b2 = (f_des[0] / norm, f_des[1] / norm)
    return b2, math.atan2(b2[1], b2[0])


def wrap_angle(angle: float) -> float:
    """Wrap to (-pi, pi]."""
    wrapped = math.fmod(angle + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


def attitude_error(theta: float, theta_des: float) -> float:
    """Signed pitch error of the body axis relative to the desired axis.

    atan2(cross, dot) of the two unit axes, continuous across the +-pi
    wrap; positive error calls for a nose-down (negative) moment.
    """
    return wrap_angle(theta - theta_des)


def attitude_moment(
    state: State,
    theta_des: float,
    m_air: float,
    gains: Gains,
    params: VehicleParams,
    theta_des_rate: float = 0.0,
) -> tuple[float, float]:
    """(u2, e_theta): PD attitude law with aerodynamic moment cancellation.

    The damping term acts on the pitch-rate error against the moving
    attitude command; without the command-rate term the position/attitude
    cascade loses most of its phase margin at hover.
    """
    e_theta = attitude_error(state.theta, theta_des)
    rate_err = state.theta_dot - theta_des_rate
    u2 = params.i_xx * (-gains.k_r * e_theta - gains.k_omega * rate_err) - m_air
    return u2, e_theta


def distribute_thrust(u1: float, u2: float, params: VehicleParams) -> ControlInput:
    """Invert [[1, 1], [-l, l]] [T_T, T_B]^T = [u1, u2]^T."""
    half_moment = u2 / (2.0 * params.l)
    return ControlInput(0.5 * u1 - half_moment, 0.5 * u1 + half_moment)


class GeometricController:
    """Stateful wrapper: one instance per simulation run.

    Holds the previous attitude command, used for three things: the
    fallback when the force request is degenerate, the linearization point
    of the reference aerodynamic compensation, and the backward-difference
    estimate of the command rate.
    """

    def __init__(
        self,
        gains: Gains,
        params: VehicleParams,
        spline,
        theta_des0: float = 0.5 * math.pi,
        dt: float = 0.01,
    ):
        self.gains = gains
        self.params = params
        self.spline = spline
        self.dt = dt
        self._last_theta_ff = theta_des0
        self._theta_ff_drift = 0.0
        self._last_theta_des = theta_des0
        self._last_b2_des = (math.cos(theta_des0), math.sin(theta_des0))
        self._primed = False

    def _aero_at(
        self, theta: float, ref: TrajectoryPoint, prev_input: ControlInput
    ) -> tuple[AeroForces, float]:
        """Reference-frame aerodynamics with the wing pitched to ``theta``.

        Airflow at the reference velocity washed by the previously applied
        thrusts; equals the plant aerodynamics when tracking is exact.
        """
        flow = wing_airflow(
            ref.r_dot[0], ref.r_dot[1], theta,
            prev_input.t_top, prev_input.t_bottom, self.params,
        )
        coeffs = eval_coeffs(self.spline, flow.alpha_e)
        return aero_forces(coeffs, flow.v_a, self.params), flow.alpha_e

    def _solve_attitude(
        self,
        r_ddot_des: tuple[float, float],
        ref: TrajectoryPoint,
        prev_input: ControlInput,
    ) -> float:
        """Self-consistent attitude command, continued from the last step.

        Root of  angle(F_des(theta)) - theta = 0  with the aerodynamic
        compensation linearized at theta, so the command follows one
        quasi-static flight-equilibrium branch of the commanded motion
        (including deliberately unstable plant branches) and jumps
        discontinuously when that branch folds away. Solving the fixed
        point matters: direct use of the force direction is ill
        conditioned whenever the aerodynamic gradients exceed the residual
        force, which happens throughout wing-borne flight. Roots are
        bracketed on a local grid (taking the one nearest the previous
        command; fold tangencies briefly put two in the window), continued
        through near-tangent minima, and otherwise sought by an outward
        scan.
        """

        def mismatch(theta: float) -> float:
            forces, alpha_e = self._aero_at(theta, ref, prev_input)
            f = desired_force(r_ddot_des, theta, self.params, forces, alpha_e)
            norm = math.hypot(f[0], f[1])
            if norm <= _FORCE_EPS:
                raise DegenerateForce("desired force is numerically zero")
            return wrap_angle(math.atan2(f[1], f[0]) - theta)

        def bisect(lo: float, hi: float, h_lo: float) -> float:
            while hi - lo > 1e-11:
                mid = 0.5 * (lo + hi)
                h_mid = mismatch(mid)
                if h_lo * h_mid <= 0.0:
                    hi = mid
                else:
                    lo, h_lo = mid, h_mid
            return 0.5 * (lo + hi)

        # extrapolate the branch: near a fold tangency two roots sit in the
        # window and the tracked one is the one continuing the drift
        guess = self._last_theta_ff + self._theta_ff_drift
        h0 = mismatch(guess)
        if abs(h0) < 1e-11:
            return guess
        if abs(h0) < 2e-3:
            # secant refinement handles the common small-drift step cheaply
            x0, f0 = guess, h0
            x1 = guess + (1e-7 if h0 > 0 else -1e-7)
            f1 = mismatch(x1)
            for _ in range(4):
                if f1 == f0 or abs(x1 - guess) > 0.01:
                    break
                x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
                if abs(x2 - guess) > 0.01:
                    break
                f2 = mismatch(x2)
                x0, f0, x1, f1 = x1, f1, x2, f2
                if abs(f1) < 1e-11:
                    return x1
        # local fine grid: brackets for simple roots, |h| minima for the
        # near-tangent double roots that occur while a branch folds
        fine = 0.002
        offs = [k * fine for k in range(-6, 7)]
        vals = [h0 if k == 6 else mismatch(guess + off) for k, off in enumerate(offs)]
        local_roots = [
            bisect(guess + offs[i], guess + offs[i + 1], vals[i])
            for i in range(len(offs) - 1)
            if vals[i] * vals[i + 1] <= 0.0
        ]
        if local_roots:
            return min(local_roots, key=lambda r: abs(r - guess))
        i_min = min(range(len(offs)), key=lambda i: abs(vals[i]))
        if abs(vals[i_min]) < 0.04:
            best, h_best = guess + offs[i_min], abs(vals[i_min])
            for scale in (1e-3, 3e-4, 1e-4, 3e-5, 1e-5):
                for cand in (best - scale, best + scale):
                    h_cand = abs(mismatch(cand))
                    if h_cand < h_best:
                        best, h_best = cand, h_cand
            if h_best < 2e-3:
                # double root: the branch continues through a tangency
                return best
            # branch just folded away: linger until the imbalance grows
            return self._last_theta_ff
        # outward scan for the nearest surviving branch
        step = 0.02
        h_lo, h_hi = vals[0], vals[-1]
        lo_off = hi_off = offs[-1]
        for k in range(1, 61):
            off = offs[-1] + k * step
            if off > 1.25:
                break
            h_probe = mismatch(guess + off)
            if h_hi * h_probe <= 0.0 and abs(h_hi) < 2.5:
                return bisect(guess + hi_off, guess + off, h_hi)
            h_hi, hi_off = h_probe, off
            h_probe = mismatch(guess - off)
            if h_lo * h_probe <= 0.0 and abs(h_probe) < 2.5:
                return bisect(guess - off, guess - lo_off, h_probe)
            h_lo, lo_off = h_probe, off
        # nothing in reach: keep the previous linearization point
        return guess

    def update(
        self,
        state: State,
        ref: TrajectoryPoint,
        forces: AeroForces,
        prev_input: ControlInput,
    ) -> ControllerOutput:
        """One control step.

        ``forces`` are the aerodynamics of the measured state (their
        pitching moment is cancelled exactly); the force command uses the
        reference-frame compensation instead.
        """
        r_ddot_des = desired_accel(state, ref, self.gains)
        prev_theta_des = self._last_theta_des
        try:
            theta_des = self._solve_attitude(r_ddot_des, ref, prev_input)
            drift = theta_des - self._last_theta_ff
            self._theta_ff_drift = drift if abs(drift) < 6e-3 else 0.0
            self._last_theta_ff = theta_des
            forces_ref, alpha_e_ref = self._aero_at(theta_des, ref, prev_input)
            f_des = desired_force(r_ddot_des, theta_des, self.params, forces_ref, alpha_e_ref)
            b2_des = (math.cos(theta_des), math.sin(theta_des))
            self._last_b2_des = b2_des
            self._last_theta_des = theta_des
        except DegenerateForce:
            b2_des, theta_des = self._last_b2_des, self._last_theta_des
            f_des = (0.0, 0.0)
        u1 = collective_thrust(f_des, state.theta)
        if self._primed:
            theta_des_rate = wrap_angle(theta_des - prev_theta_des) / self.dt
        else:
            theta_des_rate = 0.0
            self._primed = True
        u2, e_theta = attitude_moment(
            state, theta_des, forces.pitch_moment, self.gains, self.params, theta_des_rate
        )
        t_top, t_bottom = distribute_thrust(u1, u2, self.params)
        return ControllerOutput(
            u1=u1,
            u2=u2,
            t_top=t_top,
            t_bottom=t_bottom,
            f_des=f_des,
            b2_des=b2_des,
            theta_des=theta_des,
            e_theta=e_theta,
        )
