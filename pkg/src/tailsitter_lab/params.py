"""Vehicle constants and controller gains.

All quantities SI: kilograms, meters, seconds, newtons, radians unless a
name says otherwise. The defaults describe a ~0.87 kg quadrotor-biplane
tailsitter with two wings and two propellers per wing; thrust limits are
per *set* (one wing's pair of motors).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class VehicleParams:
    """Physical constants of the airframe and environment.

    Attributes:
        m: vehicle mass (kg)
        i_xx: pitch moment of inertia (kg m^2)
        l: rotor-set offset from the centerline along the wing-normal axis (m)
        c_bar: wing chord (m)
        b_span: wing span (m)
        r_prop: propeller radius (m)
        t_min: minimum thrust of one motor set (N)
        t_max_set: maximum thrust of one motor set, i.e. two motors (N)
        eta: propeller-wake efficiency in [0, 1]; 0 disables downwash
        rho: air density (kg/m^3)
        g: gravitational acceleration (m/s^2)
    """

    m: float = 0.8652
    i_xx: float = 9.77e-3
    l: float = 0.244
    c_bar: float = 0.087
    b_span: float = 1.016
    r_prop: float = 0.1145
    t_min: float = 0.0
    t_max_set: float = 5.886
    eta: float = 0.0
    rho: float = 1.225
    g: float = 9.81

    def __post_init__(self) -> None:
        for name in ("m", "i_xx", "l", "c_bar", "b_span", "r_prop"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.t_min < self.t_max_set:
            raise ValueError("thrust limits must satisfy 0 <= t_min < t_max_set")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("eta must lie in [0, 1]")
        if self.rho <= 0.0 or self.g <= 0.0:
            raise ValueError("rho and g must be positive")

    @property
    def s_wing(self) -> float:
        """Planform area of one wing, chord times span (m^2)."""
        return self.c_bar * self.b_span

    @property
    def weight(self) -> float:
        """m * g (N)."""
        return self.m * self.g

    @property
    def disk_loading_denom(self) -> float:
        """Momentum-theory denominator 0.5 * rho * pi * R^2 (kg/m)."""
        return 0.5 * self.rho * math.pi * self.r_prop**2


@dataclass(frozen=True)
class Gains:
    """Cascaded-controller gains.

    Position loop is a per-axis PD on (y, z); attitude loop is a PD on the
    pitch angle. ``kp_*`` carry units 1/s^2, ``kd_*`` 1/s, ``k_r`` 1/s^2,
    ``k_omega`` 1/s.

    Default axis assignment: the critically damped pair (11.6, 6.82) goes
    to the altitude axis; horizontal position takes the stiffer 17.4. At
    hover the horizontal loop acts through the attitude cascade, and only
    this assignment reproduces the documented hover step-response times.
    """

    kp_y: float = 17.4
    kp_z: float = 11.6
    kd_y: float = 6.82
    kd_z: float = 6.82
    k_r: float = 74.73
    k_omega: float = 17.29

    def __post_init__(self) -> None:
        for name in ("kp_y", "kp_z", "kd_y", "kd_z", "k_r", "k_omega"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_natural_frequency(
        cls,
        omega_y: float,
        omega_z: float,
        omega_att: float,
        zeta: float = 1.0,
    ) -> "Gains":
        """Build gains from per-loop natural frequencies and one damping ratio.

        kp = omega^2 and kd = 2 * zeta * omega for each loop.
        """
        return cls(
            kp_y=omega_y**2,
            kp_z=omega_z**2,
            kd_y=2.0 * zeta * omega_y,
            kd_z=2.0 * zeta * omega_z,
            k_r=omega_att**2,
            k_omega=2.0 * zeta * omega_att,
        )
