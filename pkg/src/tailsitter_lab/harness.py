"""Scenario runner: wire trajectory -> controller -> clamp -> RK4 loop.

Built-in scenarios cover the controller step responses (hover and cruise)
and the two constant-altitude transition maneuvers. Runs are fully
deterministic: no randomness anywhere, so identical configurations yield
byte-identical artifacts. Control runs at the sample rate of the
trajectory (zero-order hold); the integrator may take several sub-steps
per control period.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from . import data as data_files
from .airfoil import AeroForces, AeroSpline, fit_spline, load_aero_table_file
from .airflow import wing_airflow
from .analysis import aerodynamic_loading, find_equilibria, trim_solve
from .controller import GeometricController, TrajectoryPoint, wrap_angle
from .dynamics import ControlInput, NonFiniteState, State, clamp_input, rk4_step
from .params import Gains, VehicleParams
from .trajectory import (
    AoaProfile,
    Trajectory,
    alpha_profile,
    const_accel_trajectory,
    prescribed_aoa_trajectory,
)


class ConfigError(ValueError):
    """Invalid scenario configuration."""


class DataError(ValueError):
    """Airfoil data could not be loaded."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce one run (seed-free)."""

    scenario: str
    params: VehicleParams = field(default_factory=VehicleParams)
    gains: Gains = field(default_factory=Gains)
    dt: float = 0.01
    substeps: int = 1
    duration: float | None = None
    airfoil: str | None = None
    out_dir: str | None = None
    # constant-acceleration transition
    a_s: float = 2.0
    v_0: float = 0.0
    v_s: float = 25.0
    accel_hold: float = 4.0
    # prescribed-AoA transition
    alpha_i_deg: float = 90.0
    alpha_f_deg: float = 3.47
    t_star: float = 87.0
    aoa_shape: str = "parabola"
    aoa_hold: float = 23.0
    # step responses
    step_dy: float = -1.0
    step_dz: float = -1.0
    hover_dtheta_deg: float = -45.0
    cruise_dtheta_deg: float = 45.0
    cruise_speed: float = 25.0
    speed_step: float = -3.0

    def __post_init__(self) -> None:
        if self.dt <= 0.0:
            raise ConfigError("dt must be positive")
        if self.substeps < 1:
            raise ConfigError("substeps must be >= 1")
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; choices: {', '.join(sorted(SCENARIOS))}"
            )


@dataclass
class RunLog:
    """Per-step records plus derived summary metrics."""

    columns: dict[str, np.ndarray]
    summary: dict

    def __getitem__(self, key: str) -> np.ndarray:
        return self.columns[key]

    @property
    def n_steps(self) -> int:
        return int(self.columns["t"].size)


@dataclass(frozen=True)
class _Setup:
    state: State
    inp: ControlInput
    trajectory: Trajectory
    duration: float
    # (summary key, log column, target value, step magnitude)
    settle_specs: tuple[tuple[str, str, float, float], ...] = ()
    alpha_d_fn: Callable[[float], float] | None = None
    extras: dict = field(default_factory=dict)


def _hover_trajectory(duration: float, dt: float) -> Trajectory:
    n = int(math.ceil(duration / dt - 1e-12)) + 1
    zeros = np.zeros(n)
    return Trajectory(
        dt=dt, t=np.arange(n) * dt, y=zeros.copy(), z=zeros.copy(),
        y_dot=zeros.copy(), z_dot=zeros.copy(), y_ddot=zeros.copy(), z_ddot=zeros.copy(),
    )


def _level_trajectory(speed: float, duration: float, dt: float) -> Trajectory:
    n = int(math.ceil(duration / dt - 1e-12)) + 1
    t = np.arange(n) * dt
    zeros = np.zeros(n)
    return Trajectory(
        dt=dt, t=t, y=speed * t, z=zeros.copy(),
        y_dot=np.full(n, speed), z_dot=zeros.copy(), y_ddot=zeros.copy(), z_ddot=zeros.copy(),
    )


def _hover_state(theta: float = 0.5 * math.pi) -> State:
    return State(0.0, 0.0, theta, 0.0, 0.0, 0.0)


def _hover_input(params: VehicleParams) -> ControlInput:
    return ControlInput(0.5 * params.weight, 0.5 * params.weight)


def _cruise_trim(config: ScenarioConfig, spline: AeroSpline):
    """Trim the vehicle at the cruise speed for step-response scenarios."""
    p = config.params
    v = config.cruise_speed
    a_v = aerodynamic_loading(v, p) if p.eta == 0.0 else None
    theta0 = 0.5 * math.pi
    if a_v is not None:
        roots = find_equilibria(a_v, spline)
        if roots:
            theta0 = roots[0]
    q = 0.5 * p.rho * v * v * p.s_wing
    u1_0 = p.weight * math.sin(theta0) + q * spline.cd(theta0) * math.cos(theta0)
    trim = trim_solve(v, 0.0, p.eta, p, spline, x0=(theta0, u1_0))
    inp = ControlInput(
        0.5 * trim.collective_eq - 0.5 * trim.differential_eq,
        0.5 * trim.collective_eq + 0.5 * trim.differential_eq,
    )
    return trim, inp


def _build_hover_step(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    duration = config.duration if config.duration is not None else 6.0
    traj = _hover_trajectory(duration, config.dt)
    state = State(config.step_dy, config.step_dz, 0.5 * math.pi, 0.0, 0.0, 0.0)
    specs = (
        ("settle_y", "y", 0.0, abs(config.step_dy)),
        ("settle_z", "z", 0.0, abs(config.step_dz)),
    )
    return _Setup(state, _hover_input(config.params), traj, duration, specs)


def _build_hover_attitude_step(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    duration = config.duration if config.duration is not None else 4.0
    traj = _hover_trajectory(duration, config.dt)
    dtheta = math.radians(config.hover_dtheta_deg)
    state = _hover_state(0.5 * math.pi + dtheta)
    specs = (("settle_theta", "theta", 0.5 * math.pi, abs(dtheta)),)
    return _Setup(state, _hover_input(config.params), traj, duration, specs)


def _build_cruise_speed_step(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    duration = config.duration if config.duration is not None else 6.0
    trim, inp = _cruise_trim(config, spline)
    traj = _level_trajectory(config.cruise_speed, duration, config.dt)
    state = State(0.0, 0.0, trim.theta_eq, config.cruise_speed + config.speed_step, 0.0, 0.0)
    specs = (("settle_y_dot", "y_dot", config.cruise_speed, abs(config.speed_step)),)
    return _Setup(state, inp, traj, duration, specs, extras={"trim_theta": trim.theta_eq})


def _build_cruise_attitude_step(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    duration = config.duration if config.duration is not None else 4.0
    trim, inp = _cruise_trim(config, spline)
    traj = _level_trajectory(config.cruise_speed, duration, config.dt)
    dtheta = math.radians(config.cruise_dtheta_deg)
    state = State(0.0, 0.0, trim.theta_eq + dtheta, config.cruise_speed, 0.0, 0.0)
    specs = (("settle_theta", "theta", trim.theta_eq, abs(dtheta)),)
    return _Setup(state, inp, traj, duration, specs, extras={"trim_theta": trim.theta_eq})


def _build_transition_const_acc(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    traj = const_accel_trajectory(config.a_s, config.v_0, config.v_s, config.accel_hold, config.dt)
    duration = config.duration if config.duration is not None else traj.duration
    accel_end = (config.v_s - config.v_0) / config.a_s
    return _Setup(
        _hover_state(), _hover_input(config.params), traj, duration,
        extras={"accel_end_time": accel_end},
    )


def _build_transition_prescribed_aoa(config: ScenarioConfig, spline: AeroSpline) -> _Setup:
    profile = AoaProfile(
        alpha_i=math.radians(config.alpha_i_deg),
        alpha_f=math.radians(config.alpha_f_deg),
        t_star=config.t_star,
        shape=config.aoa_shape,
    )
    traj = prescribed_aoa_trajectory(profile, spline, config.params, config.dt, config.aoa_hold)
    duration = config.duration if config.duration is not None else traj.duration
    return _Setup(
        _hover_state(profile.alpha_i), _hover_input(config.params), traj, duration,
        alpha_d_fn=lambda t: alpha_profile(profile, t),
        extras={"t_star": config.t_star},
    )


SCENARIOS: dict[str, Callable[[ScenarioConfig, AeroSpline], _Setup]] = {
    "hover-step": _build_hover_step,
    "hover-attitude-step": _build_hover_attitude_step,
    "cruise-speed-step": _build_cruise_speed_step,
    "cruise-attitude-step": _build_cruise_attitude_step,
    "transition-const-acc": _build_transition_const_acc,
    "transition-prescribed-aoa": _build_transition_prescribed_aoa,
}

_COLUMNS = (
    "t", "y", "z", "theta", "y_dot", "z_dot", "theta_dot",
    "t_top", "t_bottom", "u1", "u2", "theta_des",
    "e_y", "e_z", "e_theta", "alpha", "alpha_e", "gamma",
    "v_i", "v_a", "a_v", "lift", "drag", "m_air",
    "ref_y", "ref_z", "ref_y_dot", "ref_z_dot", "saturated", "alpha_d",
)


def load_spline(path: str | os.PathLike | None) -> AeroSpline:
    """Load and fit the airfoil polar at ``path`` (default: bundled data)."""
    resolved = Path(path) if path is not None else data_files.default_airfoil_path()
    if not Path(resolved).is_file():
        raise DataError(f"airfoil file not found: {resolved}")
    try:
        table = load_aero_table_file(resolved)
    except ValueError as exc:
        raise DataError(f"invalid airfoil file {resolved}: {exc}") from exc
    return fit_spline(table)


def run_scenario(config: ScenarioConfig, spline: AeroSpline | None = None) -> RunLog:
    """Simulate one scenario and return its full log.

    Raises ConfigError/DataError for bad inputs and NonFiniteState (with
    the failing step index) if the integration blows up.
    """
    if spline is None:
        spline = load_spline(config.airfoil)
    setup = SCENARIOS[config.scenario](config, spline)
    params = config.params
    gains = config.gains
    dt = config.dt
    n_steps = int(round(setup.duration / dt))
    h = dt / config.substeps

    state = setup.state
    inp = setup.inp
    ctrl = GeometricController(gains, params, spline, theta_des0=state.theta, dt=dt)
    rows: dict[str, list] = {name: [] for name in _COLUMNS}

    for k in range(n_steps + 1):
        t = k * dt
        ref = setup.trajectory.at_time(t)
        flow = wing_airflow(state.y_dot, state.z_dot, state.theta, inp.t_top, inp.t_bottom, params)
        q_s = 0.5 * params.rho * flow.v_a * flow.v_a * params.s_wing
        c_l, c_d, c_m, _, _ = spline.eval_scalar(flow.alpha_e)
        forces = AeroForces(q_s * c_l, q_s * c_d, q_s * params.c_bar * c_m)
        out = ctrl.update(state, ref, forces, inp)
        applied, saturated = clamp_input(ControlInput(out.t_top, out.t_bottom), params)

        r = rows
        r["t"].append(t)
        r["y"].append(state.y)
        r["z"].append(state.z)
        r["theta"].append(state.theta)
        r["y_dot"].append(state.y_dot)
        r["z_dot"].append(state.z_dot)
        r["theta_dot"].append(state.theta_dot)
        r["t_top"].append(applied.t_top)
        r["t_bottom"].append(applied.t_bottom)
        r["u1"].append(out.u1)
        r["u2"].append(out.u2)
        r["theta_des"].append(out.theta_des)
        r["e_y"].append(state.y - ref.r[0])
        r["e_z"].append(state.z - ref.r[1])
        r["e_theta"].append(out.e_theta)
        r["alpha"].append(flow.alpha)
        r["alpha_e"].append(flow.alpha_e)
        r["gamma"].append(flow.gamma)
        r["v_i"].append(flow.v_i)
        r["v_a"].append(flow.v_a)
        r["a_v"].append(aerodynamic_loading(flow.v_a, params))
        r["lift"].append(forces.lift)
        r["drag"].append(forces.drag)
        r["m_air"].append(forces.pitch_moment)
        r["ref_y"].append(ref.r[0])
        r["ref_z"].append(ref.r[1])
        r["ref_y_dot"].append(ref.r_dot[0])
        r["ref_z_dot"].append(ref.r_dot[1])
        r["saturated"].append(float(saturated))
        r["alpha_d"].append(setup.alpha_d_fn(t) if setup.alpha_d_fn else math.nan)

        if k == n_steps:
            break
        inp = applied
        try:
            for j in range(config.substeps):
                state = rk4_step(state, lambda _t: applied, t + j * h, h, params, spline)
        except NonFiniteState as exc:
            raise NonFiniteState(f"integration diverged at step {k} (t = {t:.3f} s): {exc}") from exc

    columns = {name: np.asarray(vals, dtype=float) for name, vals in rows.items()}
    log = RunLog(columns=columns, summary={})
    log.summary = _summarize(log, config, setup)
    return log


def settling_time(
    t: np.ndarray,
    x: np.ndarray,
    target: float,
    step_magnitude: float,
    band: float = 0.02,
) -> float | None:
    """First time after which x stays within band * step of the target."""
    if t.size == 0 or step_magnitude == 0.0:
        return None
    outside = np.abs(x - target) > band * abs(step_magnitude)
    if not outside.any():
        return 0.0
    last_out = int(np.flatnonzero(outside)[-1])
    if last_out == t.size - 1:
        return None
    return float(t[last_out + 1])


def _jump_metrics(log_t, theta_des, a_v, window_steps: int = 10) -> dict:
    """Largest desired-pitch discontinuities, single-step and windowed."""
    if log_t.size < 2:
        return {
            "max_step_deg": None, "max_step_t": None, "max_step_a_v": None,
            "max_window_deg": None, "max_window_t": None, "max_window_a_v": None,
        }
    diffs = np.array([wrap_angle(d) for d in np.diff(theta_des)])
    i = int(np.argmax(np.abs(diffs)))
    unwrapped = np.concatenate(([theta_des[0]], theta_des[0] + np.cumsum(diffs)))
    w = min(window_steps, log_t.size - 1)
    win = np.abs(unwrapped[w:] - unwrapped[:-w])
    j = int(np.argmax(win))
    return {
        "max_step_deg": math.degrees(abs(diffs[i])),
        "max_step_t": float(log_t[i]),
        "max_step_a_v": float(a_v[i]),
        "max_window_deg": math.degrees(float(win[j])),
        "max_window_t": float(log_t[j]),
        "max_window_a_v": float(a_v[j]),
    }


def _summarize(log: RunLog, config: ScenarioConfig, setup: _Setup) -> dict:
    c = log.columns
    empty = c["t"].size == 0
    summary: dict = {
        "scenario": config.scenario,
        "dt": config.dt,
        "duration": setup.duration,
        "n_steps": int(c["t"].size),
        "max_abs_e_y": None if empty else float(np.max(np.abs(c["e_y"]))),
        "max_abs_e_z": None if empty else float(np.max(np.abs(c["e_z"]))),
        "max_abs_e_theta_deg": None if empty else math.degrees(float(np.max(np.abs(c["e_theta"])))),
        "saturation_fraction": None if empty else float(np.mean(c["saturated"])),
        "final": None if empty else {
            "y": float(c["y"][-1]), "z": float(c["z"][-1]),
            "theta_deg": math.degrees(float(c["theta"][-1])),
            "y_dot": float(c["y_dot"][-1]), "z_dot": float(c["z_dot"][-1]),
        },
        "total_distance": None if empty else float(c["y"][-1] - c["y"][0]),
    }
    for key, column, target, step in setup.settle_specs:
        summary[key] = None if empty else settling_time(c["t"], c[column], target, step)
    summary.update(setup.extras)
    if not empty:
        summary["theta_des_jump"] = _jump_metrics(c["t"], c["theta_des"], c["a_v"])
        accel_end = setup.extras.get("accel_end_time")
        if accel_end is not None and accel_end <= c["t"][-1]:
            i = int(round(accel_end / config.dt))
            summary["distance_at_accel_end"] = float(c["y"][i] - c["y"][0])
        if setup.alpha_d_fn is not None:
            err = np.degrees(np.abs(c["theta"] - c["alpha_d"]))
            summary["max_pitch_err_deg"] = float(np.max(err))
    return summary


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_timeseries_csv(log: RunLog, stream) -> None:
    stream.write(",".join(_COLUMNS) + "\n")
    cols = [log.columns[name] for name in _COLUMNS]
    for i in range(log.n_steps):
        stream.write(",".join("" if math.isnan(col[i]) else _fmt(col[i]) for col in cols) + "\n")


def _round_floats(obj):
    if isinstance(obj, float):
        return float(_fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def emit_outputs(log: RunLog, config: ScenarioConfig, out_dir: str | os.PathLike | None = None) -> list[Path]:
    """Write timeseries.csv, summary.json, and the SVG plot set."""
    target = Path(out_dir if out_dir is not None else (config.out_dir or "."))
    try:
        target.mkdir(parents=True, exist_ok=True)
        written = []
        csv_path = target / "timeseries.csv"
        with open(csv_path, "w", newline="") as fh:
            write_timeseries_csv(log, fh)
        written.append(csv_path)
        json_path = target / "summary.json"
        with open(json_path, "w") as fh:
            json.dump(_round_floats(log.summary), fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(json_path)
        written.extend(_emit_plots(log, config, target))
        return written
    except OSError as exc:
        raise IOError(f"cannot write outputs to {target}: {exc}") from exc


def _emit_plots(log: RunLog, config: ScenarioConfig, target: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "tailsitter-lab"
    c = log.columns
    t = c["t"]
    written = []

    def save(fig, name: str) -> None:
        path = target / name
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)

    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    axes[0].plot(t, c["y"], label="y")
    axes[0].plot(t, c["ref_y"], "--", label="y ref")
    axes[0].set_ylabel("y [m]")
    axes[1].plot(t, c["z"], label="z")
    axes[1].plot(t, c["ref_z"], "--", label="z ref")
    axes[1].set_ylabel("z [m]")
    axes[2].plot(t, np.degrees(c["theta"]), label="theta")
    axes[2].plot(t, np.degrees(c["theta_des"]), "--", label="theta des")
    axes[2].set_ylabel("pitch [deg]")
    axes[2].set_xlabel("t [s]")
    for ax in axes:
        ax.legend(loc="best", fontsize=8)
    fig.suptitle(f"{config.scenario}: states")
    save(fig, "states.svg")

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, c["t_top"], label="T top")
    ax.plot(t, c["t_bottom"], label="T bottom")
    for limit in (config.params.t_min, config.params.t_max_set):
        ax.axhline(limit, linestyle=":", color="k", linewidth=1)
    ax.set_xlabel("t [s]")
    ax.set_ylabel("set thrust [N]")
    ax.legend(loc="best", fontsize=8)
    fig.suptitle(f"{config.scenario}: thrusts")
    save(fig, "thrusts.svg")

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, np.degrees(c["alpha"]), label="alpha")
    ax.plot(t, np.degrees(c["alpha_e"]), label="alpha_e")
    ax.plot(t, np.degrees(c["gamma"]), label="gamma")
    if not np.all(np.isnan(c["alpha_d"])):
        ax.plot(t, np.degrees(c["alpha_d"]), "--", label="alpha_d")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("angle [deg]")
    ax.legend(loc="best", fontsize=8)
    fig.suptitle(f"{config.scenario}: angles")
    save(fig, "aoa.svg")

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, c["e_y"], label="e_y")
    ax.plot(t, c["e_z"], label="e_z")
    ax.plot(t, np.degrees(c["e_theta"]), label="e_theta [deg]")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("error")
    ax.legend(loc="best", fontsize=8)
    fig.suptitle(f"{config.scenario}: tracking errors")
    save(fig, "errors.svg")
    return written
