"""Airflow over the wing: inertial velocity, propeller wake, and effective AoA.

The wing sees two airflow contributions: translation of the vehicle
(inertial velocity, magnitude v_i at flight-path angle gamma) and the
propeller downwash column aligned with the thrust axis (wake speed v_w
from momentum theory, discounted by the efficiency factor eta). Their
vector sum is the true airflow v_a, and the effective angle of attack
alpha_e is the angle between the true airflow and the thrust axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SPEED_EPS = 1e-9


class NegativeThrust(ValueError):
    """Momentum theory requires a non-negative propeller thrust."""


@dataclass(frozen=True)
class AirflowState:
    """Airflow quantities at one instant.

    v_i: inertial speed (m/s); gamma: flight path angle (rad);
    alpha: nominal AoA theta - gamma (rad); v_w: wake speed (m/s);
    v_a: true airflow speed (m/s); alpha_e: effective AoA (rad).
    """

    v_i: float
    gamma: float
    alpha: float
    v_w: float
    v_a: float
    alpha_e: float


def inertial_speed(y_dot: float, z_dot: float) -> tuple[float, float]:
    """Speed magnitude and flight-path angle; gamma := 0 at rest."""
    v_i = math.hypot(y_dot, z_dot)
    if v_i < _SPEED_EPS:
        return v_i, 0.0
    return v_i, math.atan2(z_dot, y_dot)


def wake_speed(v_i: float, alpha: float, thrust_per_prop: float, params) -> float:
    """Momentum-theory wake speed behind one propeller, scaled by eta."""
    if thrust_per_prop < 0.0:
        raise NegativeThrust(f"thrust_per_prop = {thrust_per_prop}")
    if params.eta == 0.0:
        return 0.0
    axial = v_i * math.cos(alpha)
    return params.eta * math.sqrt(axial * axial + thrust_per_prop / params.disk_loading_denom)


def true_airspeed(v_i: float, v_w: float, alpha: float) -> float:
    """Law-of-cosines combination of inertial and wake speeds."""
    rad = v_w * v_w + v_i * v_i + 2.0 * v_i * v_w * math.cos(alpha)
    return math.sqrt(rad) if rad > 0.0 else 0.0


def effective_aoa(v_i: float, v_a: float, alpha: float) -> float:
    """Angle of the true airflow against the thrust axis, in [-pi/2, pi/2].

    Only the inertial velocity contributes across the wing plane, so
    sin(alpha_e) = v_i sin(alpha) / v_a; the ratio is clamped against
    rounding. Degenerate v_a maps to 0.
    """
    if v_a < _SPEED_EPS:
        return 0.0
    s = v_i * math.sin(alpha) / v_a
    if s > 1.0:
        s = 1.0
    elif s < -1.0:
        s = -1.0
    return math.asin(s)


def wing_airflow(
    y_dot: float,
    z_dot: float,
    theta: float,
    t_top: float,
    t_bottom: float,
    params,
) -> AirflowState:
    """Airflow state at the virtual aerodynamic center.

    Each wing's wake is driven by half of that wing's set thrust (one
    propeller); the two wakes are averaged before forming the true-airflow
    triangle, since both wings are lumped into a single aerodynamic center.
    """
    v_i, gamma = inertial_speed(y_dot, z_dot)
    alpha = theta - gamma
    if params.eta == 0.0:
        v_w = 0.0
    else:
        v_w_top = wake_speed(v_i, alpha, 0.5 * t_top, params)
        v_w_bot = wake_speed(v_i, alpha, 0.5 * t_bottom, params)
        v_w = 0.5 * (v_w_top + v_w_bot)
    v_a = true_airspeed(v_i, v_w, alpha)
    alpha_e = effective_aoa(v_i, v_a, alpha)
    return AirflowState(v_i=v_i, gamma=gamma, alpha=alpha, v_w=v_w, v_a=v_a, alpha_e=alpha_e)
