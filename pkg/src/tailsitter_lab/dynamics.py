"""Planar point-mass equations of motion and a fixed-step RK4 integrator.

State is (y, z, theta) with rates; inputs are the two motor-set thrusts.
Forces: gravity, set thrusts along the body thrust axis b2 = (cos theta,
sin theta), and aerodynamic lift/drag oriented by the true-airflow frame
(rotated from inertial by theta - alpha_e). The pitching moment combines
the aerodynamic moment with differential thrust times the arm length.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .airflow import wing_airflow
from .params import VehicleParams


class NonFiniteState(ArithmeticError):
    """A state or derivative component is NaN or infinite."""


class State(NamedTuple):
    y: float
    z: float
    theta: float
    y_dot: float
    z_dot: float
    theta_dot: float


class StateDerivative(NamedTuple):
    y_dot: float
    z_dot: float
    theta_dot: float
    y_ddot: float
    z_ddot: float
    theta_ddot: float


class ControlInput(NamedTuple):
    t_top: float
    t_bottom: float


def _check_finite(state: State) -> None:
    for v in state:
        if not math.isfinite(v):
            raise NonFiniteState(f"non-finite state {state}")


def equations_of_motion(
    state: State,
    inp: ControlInput,
    params: VehicleParams,
    spline,
) -> StateDerivative:
    """Accelerations from thrust, gravity, and spline aerodynamics."""
    _check_finite(state)
    flow = wing_airflow(state.y_dot, state.z_dot, state.theta, inp.t_top, inp.t_bottom, params)
    c_l, c_d, c_m, _, _ = spline.eval_scalar(flow.alpha_e)
    q_s = 0.5 * params.rho * flow.v_a * flow.v_a * params.s_wing
    lift = q_s * c_l
    drag = q_s * c_d
    m_air = q_s * params.c_bar * c_m

    thrust = inp.t_top + inp.t_bottom
    cos_t = math.cos(state.theta)
    sin_t = math.sin(state.theta)
    phi = state.theta - flow.alpha_e
    cos_p = math.cos(phi)
    sin_p = math.sin(phi)

    y_ddot = (thrust * cos_t - lift * sin_p - drag * cos_p) / params.m
    z_ddot = (thrust * sin_t + lift * cos_p - drag * sin_p) / params.m - params.g
    theta_ddot = (m_air + params.l * (inp.t_bottom - inp.t_top)) / params.i_xx
    return StateDerivative(
        state.y_dot, state.z_dot, state.theta_dot, y_ddot, z_ddot, theta_ddot
    )


def _advance(state: State, deriv: StateDerivative, h: float) -> State:
    return State(
        state.y + h * deriv.y_dot,
        state.z + h * deriv.z_dot,
        state.theta + h * deriv.theta_dot,
        state.y_dot + h * deriv.y_ddot,
        state.z_dot + h * deriv.z_ddot,
        state.theta_dot + h * deriv.theta_ddot,
    )


def rk4_step(
    state: State,
    input_fn: Callable[[float], ControlInput],
    t: float,
    dt: float,
    params: VehicleParams,
    spline,
) -> State:
    """One classical RK4 step with the control input held over the step."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    u = input_fn(t)
    k1 = equations_of_motion(state, u, params, spline)
    k2 = equations_of_motion(_advance(state, k1, 0.5 * dt), u, params, spline)
    k3 = equations_of_motion(_advance(state, k2, 0.5 * dt), u, params, spline)
    k4 = equations_of_motion(_advance(state, k3, dt), u, params, spline)
    sixth = dt / 6.0
    out = State(
        state.y + sixth * (k1.y_dot + 2.0 * (k2.y_dot + k3.y_dot) + k4.y_dot),
        state.z + sixth * (k1.z_dot + 2.0 * (k2.z_dot + k3.z_dot) + k4.z_dot),
        state.theta + sixth * (k1.theta_dot + 2.0 * (k2.theta_dot + k3.theta_dot) + k4.theta_dot),
        state.y_dot + sixth * (k1.y_ddot + 2.0 * (k2.y_ddot + k3.y_ddot) + k4.y_ddot),
        state.z_dot + sixth * (k1.z_ddot + 2.0 * (k2.z_ddot + k3.z_ddot) + k4.z_ddot),
        state.theta_dot
        + sixth * (k1.theta_ddot + 2.0 * (k2.theta_ddot + k3.theta_ddot) + k4.theta_ddot),
    )
    _check_finite(out)
    return out


def clamp_input(raw: ControlInput, params: VehicleParams) -> tuple[ControlInput, bool]:
    """Clamp each set thrust to [t_min, t_max_set]; report saturation."""
    lo, hi = params.t_min, params.t_max_set
    t_top = min(max(raw.t_top, lo), hi)
    t_bottom = min(max(raw.t_bottom, lo), hi)
    return ControlInput(t_top, t_bottom), (t_top != raw.t_top or t_bottom != raw.t_bottom)
