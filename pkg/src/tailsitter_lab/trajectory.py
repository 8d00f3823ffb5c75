"""Constant-altitude transition references.

Two generators: a constant-acceleration ramp to a target cruise speed,
and a prescribed-AoA profile where the forward speed solves the scalar
nonlinear ODE  v' + A(t) v^2 = B(t)  obtained by projecting the dynamics
onto the wing-normal axis with the pitch slaved to the prescribed AoA
(no prop-wash). Both produce uniformly sampled (position, velocity,
acceleration) rows at constant altitude z = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Literal

import numpy as np

from .controller import TrajectoryPoint
from .params import VehicleParams

EPS_ALPHA = 0.01  # rad; cot/sin guard for the prescribed-AoA ODE


class InconsistentSign(ValueError):
    """Acceleration sign does not move v_0 toward v_s."""


class SingularAoa(ValueError):
    """Prescribed AoA too close to zero for the transition ODE."""


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled reference, constant altitude unless stated."""

    dt: float
    t: np.ndarray
    y: np.ndarray
    z: np.ndarray
    y_dot: np.ndarray
    z_dot: np.ndarray
    y_ddot: np.ndarray
    z_ddot: np.ndarray

    def __len__(self) -> int:
        return self.t.size

    @property
    def duration(self) -> float:
        return float(self.t[-1])

    @property
    def distance(self) -> float:
        return float(self.y[-1] - self.y[0])

    def point(self, i: int) -> TrajectoryPoint:
        return TrajectoryPoint(
            t=float(self.t[i]),
            r=(float(self.y[i]), float(self.z[i])),
            r_dot=(float(self.y_dot[i]), float(self.z_dot[i])),
            r_ddot=(float(self.y_ddot[i]), float(self.z_ddot[i])),
        )

    def at_time(self, t: float) -> TrajectoryPoint:
        """Reference at time t; beyond the horizon, coast at final velocity."""
        if t <= self.t[-1] + 1e-12:
            i = int(round(t / self.dt))
            i = min(max(i, 0), self.t.size - 1)
            return self.point(i)
        dt_over = t - float(self.t[-1])
        return TrajectoryPoint(
            t=t,
            r=(
                float(self.y[-1] + self.y_dot[-1] * dt_over),
                float(self.z[-1] + self.z_dot[-1] * dt_over),
            ),
            r_dot=(float(self.y_dot[-1]), float(self.z_dot[-1])),
            r_ddot=(0.0, 0.0),
        )

    def write_csv(self, stream: IO[str]) -> None:
        stream.write("t,y,z,ydot,zdot,yddot,zddot\n")
        for i in range(self.t.size):
            row = (
                self.t[i], self.y[i], self.z[i],
                self.y_dot[i], self.z_dot[i], self.y_ddot[i], self.z_ddot[i],
            )
            stream.write(",".join(f"{v:.9g}" for v in row) + "\n")


@dataclass(frozen=True)
class AoaProfile:
    """Forward-transition AoA schedule from alpha_i down to alpha_f by t_star."""

    alpha_i: float
    alpha_f: float
    t_star: float
    shape: Literal["linear", "parabola"] = "parabola"

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha_f <= self.alpha_i <= 0.5 * math.pi:
            raise ValueError("need 0 < alpha_f <= alpha_i <= pi/2")
        if self.t_star <= 0.0:
            raise ValueError("t_star must be positive")
        if self.shape not in ("linear", "parabola"):
            raise ValueError(f"unknown shape {self.shape!r}")


def alpha_profile(profile: AoaProfile, t: float) -> float:
    """Prescribed AoA at time t (rad); constant alpha_f past t_star."""
    if t >= profile.t_star:
        return profile.alpha_f
    if profile.shape == "linear":
        return profile.alpha_i - (profile.alpha_i - profile.alpha_f) / profile.t_star * t
    dt = t - profile.t_star
    return profile.alpha_f - (profile.alpha_f - profile.alpha_i) / profile.t_star**2 * dt * dt


def const_accel_trajectory(
    a_s: float,
    v_0: float,
    v_s: float,
    hold: float,
    dt: float,
) -> Trajectory:
    """Accelerate at a_s from v_0 until v_s, then hold that speed.

    The time axis is the uniform dt grid covering both phases; closed-form
    kinematics fill positions and velocities.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if a_s == 0.0 or (v_s - v_0) / a_s <= 0.0:
        raise InconsistentSign("a_s must drive v_0 toward v_s")
    t_acc = (v_s - v_0) / a_s
    n = int(math.ceil((t_acc + hold) / dt - 1e-12)) + 1
    t = np.arange(n) * dt
    accel = t < t_acc - 1e-12
    y_ddot = np.where(accel, a_s, 0.0)
    y_dot = np.where(accel, v_0 + a_s * t, v_s)
    y_acc_end = v_0 * t_acc + 0.5 * a_s * t_acc * t_acc
    y = np.where(accel, v_0 * t + 0.5 * a_s * t * t, y_acc_end + v_s * (t - t_acc))
    zero = np.zeros(n)
    return Trajectory(dt=dt, t=t, y=y, z=zero.copy(), y_dot=y_dot,
                      z_dot=zero.copy(), y_ddot=y_ddot, z_ddot=zero.copy())


def _ode_coeffs(alpha_d: float, spline, params: VehicleParams) -> tuple[float, float]:
    """A(t), B(t) of v' = B - A v^2 at the prescribed AoA (no prop-wash)."""
    sin_a = math.sin(alpha_d)
    cos_a = math.cos(alpha_d)
    c_l = spline.cl(alpha_d)
    c_d = spline.cd(alpha_d)
    a = 0.5 * params.rho * params.s_wing * (c_l * cos_a + c_d * sin_a) / (params.m * sin_a)
    b = params.g * cos_a / sin_a
    return a, b


def prescribed_aoa_trajectory(
    profile: AoaProfile,
    spline,
    params: VehicleParams,
    dt: float,
    hold: float,
) -> Trajectory:
    """Integrate the transition ODE for the forward speed, then position.

    RK4 on v' = B(t) - A(t) v^2 with v(0) = 0; position by trapezoidal
    integration of v; acceleration re-evaluated from the ODE right side.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    n = int(math.ceil((profile.t_star + hold) / dt - 1e-12)) + 1
    t = np.arange(n) * dt

    def rhs(time: float, v: float) -> float:
        alpha_d = alpha_profile(profile, time)
        if alpha_d <= EPS_ALPHA:
            raise SingularAoa(f"alpha_d = {alpha_d:.4f} rad at t = {time:.3f} s")
        a, b = _ode_coeffs(alpha_d, spline, params)
        return b - a * v * v

    v = np.empty(n)
    v[0] = 0.0
    for i in range(n - 1):
        ti, vi = float(t[i]), float(v[i])
        k1 = rhs(ti, vi)
        k2 = rhs(ti + 0.5 * dt, vi + 0.5 * dt * k1)
        k3 = rhs(ti + 0.5 * dt, vi + 0.5 * dt * k2)
        k4 = rhs(ti + dt, vi + dt * k3)
        v[i + 1] = vi + dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4)
        if not math.isfinite(v[i + 1]):
            raise ArithmeticError(f"transition ODE diverged at t = {t[i + 1]:.3f} s")

    y_ddot = np.array([rhs(float(ti), float(vi)) for ti, vi in zip(t, v)])
    y = np.concatenate(([0.0], np.cumsum(0.5 * dt * (v[1:] + v[:-1]))))
    zero = np.zeros(n)
    return Trajectory(dt=dt, t=t, y=y, z=zero.copy(), y_dot=v,
                      z_dot=zero.copy(), y_ddot=y_ddot, z_ddot=zero.copy())


@dataclass(frozen=True)
class FeasibilityReport:
    """Quasi-static thrust screening of a trajectory against actuator limits."""

    duration: float
    distance: float
    max_accel: float
    collective: np.ndarray
    per_set: np.ndarray
    feasible: bool
    n_violations: int
    limits: tuple[float, float] = field(default=(0.0, 0.0))


def feasibility_report(traj: Trajectory, params: VehicleParams, spline) -> FeasibilityReport:
    """Estimate the collective thrust each point needs and flag limit hits.

    At each sample the pitch is taken as the quasi-static force-balance
    angle (continued from the previous point to stay on one equilibrium
    branch), the thrust as the magnitude of the residual force after
    gravity and aerodynamics. Per-set thrust is half the collective.
    """
    n = len(traj)
    collective = np.empty(n)
    theta_prev = 0.5 * math.pi

    for i in range(n):
        vy, vz = float(traj.y_dot[i]), float(traj.z_dot[i])
        ay, az = float(traj.y_ddot[i]), float(traj.z_ddot[i])
        v = math.hypot(vy, vz)
        gamma = math.atan2(vz, vy) if v > 1e-9 else 0.0

        def residual_force(theta: float) -> tuple[float, float]:
            alpha = theta - gamma
            q_s = 0.5 * params.rho * v * v * params.s_wing
            lift = q_s * spline.cl(alpha)
            drag = q_s * spline.cd(alpha)
            cos_g, sin_g = math.cos(gamma), math.sin(gamma)
            aero_y = -drag * cos_g - lift * sin_g
            aero_z = -drag * sin_g + lift * cos_g
            return params.m * ay - aero_y, params.m * az + params.weight - aero_z

        # pick theta so the residual force lies along b2: root of its b3 projection
        def b3_residual(theta: float) -> float:
            fy, fz = residual_force(theta)
            return -math.sin(theta) * fy + math.cos(theta) * fz

        theta = _continue_root(b3_residual, theta_prev)
        fy, fz = residual_force(theta)
        need = math.cos(theta) * fy + math.sin(theta) * fz
        collective[i] = need
        theta_prev = theta

    per_set = 0.5 * collective
    bad = int(np.sum((per_set < params.t_min - 1e-9) | (per_set > params.t_max_set + 1e-9)))
    accel = np.hypot(traj.y_ddot, traj.z_ddot)
    return FeasibilityReport(
        duration=traj.duration,
        distance=traj.distance,
        max_accel=float(accel.max()) if n else 0.0,
        collective=collective,
        per_set=per_set,
        feasible=bad == 0,
        n_violations=bad,
        limits=(params.t_min, params.t_max_set),
    )


def _continue_root(fn, x0: float, span: float = 0.35, tol: float = 1e-10) -> float:
    """Root of fn near x0: expand a bracket around x0, then bisect.

    Tracks one solution branch across a sampled trajectory; if no sign
    change is found nearby the search widens until it covers (0, pi).
    """
    lo, hi = x0 - span, x0 + span
    f_lo, f_hi = fn(lo), fn(hi)
    widen = 0
    while f_lo * f_hi > 0.0 and widen < 6:
        lo -= span
        hi += span
        f_lo, f_hi = fn(lo), fn(hi)
        widen += 1
    if f_lo * f_hi > 0.0:
        return x0  # no balance angle nearby; report the previous branch
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)
