"""Flight equilibria: existence, stability, bifurcation structure, and trim.

The dimensionless aerodynamic loading a_v = 0.5 rho S |V_a|^2 / (m g)
acts as the bifurcation parameter. Without prop-wash the steady-state
wing-normal force balance inverts to a closed form a_v(alpha); scanning
that curve yields equilibrium angles of attack, fold points where
equilibria appear or annihilate, and a Routh-Hurwitz stability label per
root. A numerical trim solver handles the prop-wash-coupled problem the
closed form cannot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import IO, Sequence

import numpy as np

from .airfoil import AeroForces
from .airflow import wing_airflow
from .controller import GeometricController, TrajectoryPoint
from .dynamics import ControlInput, State, clamp_input, equations_of_motion, rk4_step
from .params import Gains, VehicleParams

TOL_TRIM = 1e-6  # m/s^2
_ALPHA_GRID_DEG = np.arange(0.05, 90.0 + 1e-9, 0.05)
_ALPHA_GRID_RAD = np.radians(_ALPHA_GRID_DEG)


class SingularDenominator(ZeroDivisionError):
    """C_D + C_L cot(alpha) vanished; a_v undefined at this alpha."""


@dataclass(frozen=True)
class EquilibriumPoint:
    """One equilibrium AoA with its Routh-Hurwitz classification."""

    alpha: float
    a_v: float
    p: float
    q: float
    stable: bool
    marginal: bool = False


@dataclass(frozen=True)
class BifurcationDiagram:
    """Equilibria per aerodynamic-loading target plus fold locations."""

    a_v_values: np.ndarray
    equilibria: tuple[tuple[EquilibriumPoint, ...], ...]
    folds: tuple[float, ...]

    def counts(self) -> np.ndarray:
        return np.array([len(e) for e in self.equilibria])


@dataclass(frozen=True)
class TrimPoint:
    """Numerically trimmed flight condition after a settling simulation."""

    v_i: float
    eta: float
    theta_eq: float
    collective_eq: float
    differential_eq: float
    alpha_e_eq: float
    a_v_true: float
    residual: float
    converged: bool
    theta_solver: float = float("nan")
    settle_drift: float = 0.0


@dataclass(frozen=True)
class TrimJump:
    """Refined location of the trim-branch discontinuity for one eta."""

    eta: float
    v_jump: float
    a_v_before: float
    a_v_after: float
    dalpha_deg: float


@dataclass(frozen=True)
class SweepResult:
    points: tuple[TrimPoint, ...]
    jumps: tuple[TrimJump, ...]


def aerodynamic_loading(v_a: float, params: VehicleParams) -> float:
    """Dynamic pressure over weight: 0.5 rho S v_a^2 / (m g)."""
    if v_a < 0.0:
        raise ValueError("airspeed must be non-negative")
    return 0.5 * params.rho * params.s_wing * v_a * v_a / params.weight


def a_v_of_alpha(alpha, spline):
    """Equilibrium loading cot(a) / (C_D + C_L cot(a)); scalar or array.

    Evaluated as cos(a) / (C_L cos(a) + C_D sin(a)) to stay finite at 90 deg.
    """
    if isinstance(alpha, (float, int)):
        cos_a = math.cos(alpha)
        sin_a = math.sin(alpha)
        den = spline.cl(alpha) * cos_a + spline.cd(alpha) * sin_a
        if abs(den) < 1e-12:
            raise SingularDenominator(f"degenerate force balance at alpha = {alpha}")
        return cos_a / den
    a = np.asarray(alpha, dtype=float)
    den = spline.cl(a) * np.cos(a) + spline.cd(a) * np.sin(a)
    if np.any(np.abs(den) < 1e-12):
        raise SingularDenominator("degenerate force balance inside alpha array")
    return np.cos(a) / den


def _equilibria_from_curve(
    target: float,
    grid: np.ndarray,
    curve: np.ndarray,
    spline,
    tol: float = 1e-6,
) -> list[float]:
    f = curve - target
    zero_tol = 1e-9 * max(1.0, abs(target))
    sign = np.sign(f)
    sign[np.abs(f) <= zero_tol] = 0.0
    roots = [float(grid[i]) for i in np.flatnonzero(sign == 0.0)]
    res_tol = 1e-6 * max(1.0, abs(target))
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0.0):
        lo, hi = float(grid[i]), float(grid[i + 1])
        f_lo = float(f[i])
        f_mid = f_lo
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            f_mid = a_v_of_alpha(mid, spline) - target
            if hi - lo < tol and abs(f_mid) < res_tol:
                break
            if f_lo * f_mid <= 0.0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
        roots.append(0.5 * (lo + hi))
    roots.sort()
    # merge duplicates from exact grid hits adjacent to sign changes
    merged: list[float] = []
    spacing = float(grid[1] - grid[0])
    for r in roots:
        if merged and r - merged[-1] < 0.5 * spacing:
            continue
        merged.append(r)
    return merged


def find_equilibria(a_v_target: float, spline) -> list[float]:
    """Roots of a_v(alpha) = target on (0, 90] deg, ascending (radians).

    Sign-change scan on a 0.05 deg grid refined by bisection to 1e-6 rad.
    """
    if a_v_target < 0.0:
        raise ValueError("a_v_target must be non-negative")
    curve = a_v_of_alpha(_ALPHA_GRID_RAD, spline)
    return _equilibria_from_curve(a_v_target, _ALPHA_GRID_RAD, curve, spline)


def stability_pq(alpha: float, spline) -> tuple[float, float]:
    """Characteristic-polynomial coefficients (p, q) at alpha."""
    c_l, dc_l = spline.cl_with_slope(alpha)
    c_d, dc_d = spline.cd_with_slope(alpha)
    p = 3.0 * c_d + dc_l
    q = c_d * c_d + c_d * dc_l - c_l * dc_d + c_l * c_l
    return p, q


def stability_classify(alpha: float, spline) -> EquilibriumPoint:
    """Routh-Hurwitz label: unstable iff p q < 0 or (p < 0 and q < 0)."""
    p, q = stability_pq(alpha, spline)
    unstable = (p * q < 0.0) or (p < 0.0 and q < 0.0)
    marginal = p == 0.0 or q == 0.0
    return EquilibriumPoint(
        alpha=alpha,
        a_v=a_v_of_alpha(alpha, spline),
        p=p,
        q=q,
        stable=not unstable,
        marginal=marginal,
    )


def stability_matrix(alpha: float, spline) -> np.ndarray:
    """Velocity-perturbation matrix whose spectrum decides stability.

    Its characteristic polynomial is lambda^2 + p lambda + 2 q.
    """
    c_l, dc_l = spline.cl_with_slope(alpha)
    c_d, dc_d = spline.cd_with_slope(alpha)
    return np.array([[-2.0 * c_d, dc_d - c_l], [2.0 * c_l, -dc_l - c_d]])


def linearization_oracle(
    v_ref: tuple[float, float],
    theta: float,
    params: VehicleParams,
    spline,
) -> np.ndarray:
    """Finite-difference Jacobian of the inertial aerodynamic force field.

    The force field is 0.5 rho S |v| R(alpha(v)) v with the body pitch held
    at ``theta``; central differences with h = 1e-5 |v_ref|. Independent
    cross-check for the closed-form stability matrix (they agree up to the
    positive factor 0.5 rho S |v_ref| at level flight).
    """
    v_norm = math.hypot(*v_ref)
    if v_norm <= 0.0:
        raise ValueError("v_ref must be nonzero")
    half_rho_s = 0.5 * params.rho * params.s_wing

    def force(vy: float, vz: float) -> tuple[float, float]:
        v = math.hypot(vy, vz)
        gamma = math.atan2(vz, vy)
        alpha = theta - gamma
        c_l = spline.cl(alpha)
        c_d = spline.cd(alpha)
        return (
            half_rho_s * v * (-c_d * vy - c_l * vz),
            half_rho_s * v * (c_l * vy - c_d * vz),
        )

    h = 1e-5 * v_norm
    jac = np.empty((2, 2))
    for j, (ey, ez) in enumerate(((1.0, 0.0), (0.0, 1.0))):
        f_plus = force(v_ref[0] + h * ey, v_ref[1] + h * ez)
        f_minus = force(v_ref[0] - h * ey, v_ref[1] - h * ez)
        jac[0, j] = (f_plus[0] - f_minus[0]) / (2.0 * h)
        jac[1, j] = (f_plus[1] - f_minus[1]) / (2.0 * h)
    return jac


def bifurcation_scan(
    a_v_min: float,
    a_v_max: float,
    step: float,
    spline,
    fold_tol: float = 1e-3,
) -> BifurcationDiagram:
    """Equilibria and stability over an a_v grid, plus refined fold points.

    Fold points (where the equilibrium count changes) are located by
    bisection on the count to within ``fold_tol`` in a_v.
    """
    if not 0.0 <= a_v_min < a_v_max:
        raise ValueError("need 0 <= a_v_min < a_v_max")
    curve = a_v_of_alpha(_ALPHA_GRID_RAD, spline)
    targets = np.arange(a_v_min, a_v_max + 0.5 * step, step)

    def roots_at(a_v: float) -> list[float]:
        return _equilibria_from_curve(a_v, _ALPHA_GRID_RAD, curve, spline)

    all_points: list[tuple[EquilibriumPoint, ...]] = []
    counts: list[int] = []
    for a_v in targets:
        roots = roots_at(float(a_v))
        pts = tuple(
            replace(stability_classify(r, spline), a_v=float(a_v)) for r in roots
        )
        all_points.append(pts)
        counts.append(len(pts))

    folds: list[float] = []
    for i in range(len(targets) - 1):
        if counts[i] == counts[i + 1]:
            continue
        lo, hi = float(targets[i]), float(targets[i + 1])
        n_lo = counts[i]
        while hi - lo > fold_tol:
            mid = 0.5 * (lo + hi)
            if len(roots_at(mid)) == n_lo:
                lo = mid
            else:
                hi = mid
        folds.append(0.5 * (lo + hi))

    return BifurcationDiagram(
        a_v_values=targets,
        equilibria=tuple(all_points),
        folds=tuple(folds),
    )


def write_bifurcation_csv(diagram: BifurcationDiagram, stream: IO[str]) -> None:
    stream.write("a_v,alpha_deg,p,q,stable\n")
    for pts in diagram.equilibria:
        for pt in pts:
            stream.write(
                f"{pt.a_v:.9g},{math.degrees(pt.alpha):.9g},"
                f"{pt.p:.9g},{pt.q:.9g},{int(pt.stable)}\n"
            )


# ---------------------------------------------------------------------------
# numerical trim


def _trim_initial_guess(
    v_i: float,
    gamma: float,
    params: VehicleParams,
    spline,
) -> tuple[float, float]:
    """Warm start from the no-wash analytic equilibrium branch.

    Uses the largest equilibrium AoA (the branch continued from hover as
    speed grows); with prop-wash this is only approximate but close enough
    for the descent to converge quickly.
    """
    a_v = aerodynamic_loading(v_i, params)
    try:
        roots = find_equilibria(a_v, spline)
    except SingularDenominator:
        roots = []
    alpha0 = roots[-1] if roots else 0.5 * math.pi
    theta0 = gamma + alpha0
    q_s = 0.5 * params.rho * v_i * v_i * params.s_wing
    lift = q_s * spline.cl(alpha0)
    drag = q_s * spline.cd(alpha0)
    u1_0 = params.weight * math.sin(theta0) + drag * math.cos(alpha0) - lift * math.sin(alpha0)
    return theta0, max(u1_0, 0.1)


def _trim_physics(
    theta: float,
    u1: float,
    v_y: float,
    v_z: float,
    params: VehicleParams,
    spline,
):
    """Accelerations at a candidate trim, differential cancelling M_air.

    The differential thrust is solved by fixed-point iteration because with
    prop-wash the pitching moment depends on the per-wing wake. Candidate
    set thrusts are floored at zero before the wake model.
    """
    delta = 0.0
    t_top = t_bottom = max(0.5 * u1, 0.0)
    flow = coeffs = None
    for _ in range(10):
        t_top = max(0.5 * u1 - 0.5 * delta, 0.0)
        t_bottom = max(0.5 * u1 + 0.5 * delta, 0.0)
        flow = wing_airflow(v_y, v_z, theta, t_top, t_bottom, params)
        coeffs = spline.eval_scalar(flow.alpha_e)
        q_s = 0.5 * params.rho * flow.v_a * flow.v_a * params.s_wing
        m_air = q_s * params.c_bar * coeffs[2]
        new_delta = -m_air / params.l
        if abs(new_delta - delta) < 1e-12:
            delta = new_delta
            break
        delta = new_delta
    q_s = 0.5 * params.rho * flow.v_a * flow.v_a * params.s_wing
    lift = q_s * coeffs[0]
    drag = q_s * coeffs[1]
    thrust = t_top + t_bottom
    phi = theta - flow.alpha_e
    y_ddot = (thrust * math.cos(theta) - lift * math.sin(phi) - drag * math.cos(phi)) / params.m
    z_ddot = (thrust * math.sin(theta) + lift * math.cos(phi) - drag * math.sin(phi)) / params.m - params.g
    return y_ddot, z_ddot, delta, flow


def trim_solve(
    v_i: float,
    gamma: float,
    eta: float,
    params: VehicleParams,
    spline,
    x0: tuple[float, float] | None = None,
    tol: float = TOL_TRIM,
    max_iter: int = 10000,
) -> TrimPoint:
    """Gradient-descent trim at fixed flight speed and path angle.

    Decision variables are pitch and collective thrust; differential thrust
    is eliminated analytically each evaluation so the pitch acceleration is
    exactly zero. Central-difference gradients with backtracking line
    search; converged when the residual acceleration norm drops below
    ``tol``. On iteration exhaustion the best point is returned with
    ``converged = False``.
    """
    if v_i <= 0.0:
        raise ValueError("v_i must be positive")
    p = params if params.eta == eta else replace(params, eta=eta)
    v_y = v_i * math.cos(gamma)
    v_z = v_i * math.sin(gamma)
    w = p.weight
    # keep the search inside the forward-flight quadrant relative to gamma
    theta_lo = gamma + 5e-4
    theta_hi = gamma + 0.5 * math.pi + 0.35
    u1_lo, u1_hi = 0.0, 2.5 * p.t_max_set
    # pitch sensitivity grows with dynamic pressure; rescaling keeps the
    # descent well conditioned across the whole speed range
    s_th = w / (w + 2.0 * p.rho * p.s_wing * v_i * v_i)

    def objective(theta: float, u1: float) -> float:
        ay, az, _, _ = _trim_physics(theta, u1, v_y, v_z, p, spline)
        return ay * ay + az * az

    def descend(theta: float, u1: float, budget: int):
        theta = min(max(theta, theta_lo), theta_hi)
        u1 = min(max(u1, u1_lo), u1_hi)
        f = objective(theta, u1)
        h = 1e-6
        step = 0.1
        for _ in range(budget):
            if f < tol * tol:
                return theta, u1, f, True
            # gradient in scaled variables (theta / s_th, u1 / weight)
            g_theta = (objective(theta + h, u1) - objective(theta - h, u1)) / (2.0 * h) * s_th
            g_u = (objective(theta, u1 + h * w) - objective(theta, u1 - h * w)) / (2.0 * h)
            g_sq = g_theta * g_theta + g_u * g_u
            if g_sq < 1e-30:
                break
            accepted = False
            s = step
            for _ in range(60):
                theta_new = min(max(theta - s * g_theta * s_th, theta_lo), theta_hi)
                u1_new = min(max(u1 - s * g_u * w, u1_lo), u1_hi)
                d_th = (theta_new - theta) / s_th
                d_u = (u1_new - u1) / w
                decrease = -(d_th * g_theta + d_u * g_u)
                if decrease <= 0.0:
                    s *= 0.5
                    continue
                f_new = objective(theta_new, u1_new)
                if f_new <= f - 1e-4 * decrease:
                    accepted = True
                    break
                s *= 0.5
            if not accepted:
                break
            theta, u1, f = theta_new, u1_new, f_new
            step = min(s * 2.0, 1.0)
        return theta, u1, f, f < tol * tol

    if x0 is None:
        x0 = _trim_initial_guess(v_i, gamma, p, spline)
        theta, u1, f, converged = descend(x0[0], x0[1], max_iter)
    else:
        theta, u1, f, converged = descend(x0[0], x0[1], max_iter // 2)
        if not converged:
            # warm start led into a vanished branch: retry from the
            # analytic equilibrium guess
            g0 = _trim_initial_guess(v_i, gamma, p, spline)
            theta2, u12, f2, conv2 = descend(g0[0], g0[1], max_iter // 2)
            if conv2 or f2 < f:
                theta, u1, f, converged = theta2, u12, f2, conv2

    ay, az, delta, flow = _trim_physics(theta, u1, v_y, v_z, p, spline)
    residual = math.hypot(ay, az)
    return TrimPoint(
        v_i=v_i,
        eta=eta,
        theta_eq=theta,
        collective_eq=u1,
        differential_eq=delta,
        alpha_e_eq=flow.alpha_e,
        a_v_true=aerodynamic_loading(flow.v_a, p),
        residual=residual,
        converged=converged and residual < tol,
        theta_solver=theta,
    )


def _hold_velocity_settle(
    trim: TrimPoint,
    gamma: float,
    params: VehicleParams,
    spline,
    gains: Gains,
    duration: float = 5.0,
    dt: float = 0.01,
) -> TrimPoint:
    """Fly the trim point closed-loop for ``duration`` and re-measure it."""
    p = params if params.eta == trim.eta else replace(params, eta=trim.eta)
    v_y = trim.v_i * math.cos(gamma)
    v_z = trim.v_i * math.sin(gamma)
    state = State(0.0, 0.0, trim.theta_eq, v_y, v_z, 0.0)
    inp = ControlInput(
        0.5 * trim.collective_eq - 0.5 * trim.differential_eq,
        0.5 * trim.collective_eq + 0.5 * trim.differential_eq,
    )
    inp, _ = clamp_input(inp, p)
    ctrl = GeometricController(gains, p, spline, theta_des0=trim.theta_eq, dt=dt)
    n = int(round(duration / dt))
    for k in range(n):
        t = k * dt
        ref = TrajectoryPoint(t, (v_y * t, v_z * t), (v_y, v_z), (0.0, 0.0))
        flow = wing_airflow(state.y_dot, state.z_dot, state.theta, inp.t_top, inp.t_bottom, p)
        c_l, c_d, c_m, _, _ = spline.eval_scalar(flow.alpha_e)
        q_s = 0.5 * p.rho * flow.v_a * flow.v_a * p.s_wing
        forces = AeroForces(q_s * c_l, q_s * c_d, q_s * p.c_bar * c_m)
        out = ctrl.update(state, ref, forces, inp)
        inp, _ = clamp_input(ControlInput(out.t_top, out.t_bottom), p)
        held = inp
        state = rk4_step(state, lambda _t: held, t, dt, p, spline)

    flow = wing_airflow(state.y_dot, state.z_dot, state.theta, inp.t_top, inp.t_bottom, p)
    deriv = equations_of_motion(state, inp, p, spline)
    return replace(
        trim,
        theta_eq=state.theta,
        collective_eq=inp.t_top + inp.t_bottom,
        differential_eq=inp.t_bottom - inp.t_top,
        alpha_e_eq=flow.alpha_e,
        a_v_true=aerodynamic_loading(flow.v_a, p),
        residual=trim.residual,
        settle_drift=abs(state.theta - trim.theta_solver),
    )


def trim_solve_settled(
    v_i: float,
    gamma: float,
    eta: float,
    params: VehicleParams,
    spline,
    gains: Gains | None = None,
    x0: tuple[float, float] | None = None,
    settle: float = 5.0,
    dt: float = 0.01,
) -> TrimPoint:
    """trim_solve followed by the closed-loop settling re-measurement."""
    gains = gains or Gains()
    trim = trim_solve(v_i, gamma, eta, params, spline, x0=x0)
    if settle <= 0.0:
        return trim
    return _hold_velocity_settle(trim, gamma, params, spline, gains, settle, dt)


def _refine_jump(
    eta: float,
    v_lo: float,
    v_hi: float,
    pt_lo: TrimPoint,
    pt_hi: TrimPoint,
    params: VehicleParams,
    spline,
    gains: Gains,
    settle: float,
    dt: float,
    v_tol: float = 0.02,
) -> TrimJump:
    """Bisect the sweep interval containing the branch discontinuity.

    Classification inside the bisection uses the warm-started solver only
    (it stays on the upper branch while that branch exists and falls to
    the lower one past the fold); the reported endpoints are re-measured
    with the full settling simulation.
    """
    theta_split = 0.5 * (pt_lo.theta_eq + pt_hi.theta_eq)
    lo, hi = v_lo, v_hi
    warm = (pt_lo.theta_eq, pt_lo.collective_eq)
    while hi - lo > v_tol:
        mid = 0.5 * (lo + hi)
        # classification only: a capped budget is plenty on the surviving
        # branch and fails fast in the fold ghost
        pt = trim_solve(mid, 0.0, eta, params, spline, x0=warm, max_iter=2000)
        if pt.converged and pt.theta_eq > theta_split:
            lo = mid
            warm = (pt.theta_eq, pt.collective_eq)
        else:
            hi = mid
    lo_pt = trim_solve_settled(
        lo, 0.0, eta, params, spline, gains=gains,
        x0=(pt_lo.theta_eq, pt_lo.collective_eq), settle=settle, dt=dt,
    )
    hi_pt = trim_solve_settled(
        hi, 0.0, eta, params, spline, gains=gains,
        x0=(pt_hi.theta_eq, pt_hi.collective_eq), settle=settle, dt=dt,
    )
    return TrimJump(
        eta=eta,
        v_jump=0.5 * (lo + hi),
        a_v_before=lo_pt.a_v_true,
        a_v_after=hi_pt.a_v_true,
        dalpha_deg=math.degrees(lo_pt.alpha_e_eq - hi_pt.alpha_e_eq),
    )


def trim_sweep(
    v_range: Sequence[float] | None = None,
    eta_range: Sequence[float] | None = None,
    params: VehicleParams | None = None,
    spline=None,
    gains: Gains | None = None,
    settle: float = 5.0,
    dt: float = 0.01,
    jump_threshold_deg: float = 4.0,
    refine_jumps: bool = True,
) -> SweepResult:
    """Trim the default 630-point grid (or custom ranges) with settling.

    For each eta, speeds are swept ascending with the previous settled
    solution as the warm start, which follows one stable equilibrium branch
    until it disappears. The largest pitch discontinuity per eta is then
    localized by bisection.
    """
    if params is None:
        params = VehicleParams()
    if spline is None:
        raise ValueError("spline is required")
    gains = gains or Gains()
    v_values = list(v_range) if v_range is not None else [float(v) for v in range(1, 31)]
    eta_values = (
        list(eta_range) if eta_range is not None else [round(0.05 * k, 2) for k in range(21)]
    )
    if not v_values or not eta_values:
        raise ValueError("v_range and eta_range must be nonempty")

    points: list[TrimPoint] = []
    jumps: list[TrimJump] = []
    for eta in eta_values:
        warm: tuple[float, float] | None = None
        row: list[TrimPoint] = []
        for v in v_values:
            pt = trim_solve_settled(
                v, 0.0, eta, params, spline, gains=gains, x0=warm, settle=settle, dt=dt
            )
            row.append(pt)
            warm = (pt.theta_eq, pt.collective_eq)
        points.extend(row)
        if refine_jumps and len(row) > 1:
            # the fold discontinuity is the largest drop of the
            # equilibrium AoA with increasing speed (low-speed wake
            # equilibria can move by more, but upward)
            drops = [
                math.degrees(row[i].alpha_e_eq - row[i + 1].alpha_e_eq)
                for i in range(len(row) - 1)
            ]
            k = int(np.argmax(drops))
            if drops[k] >= jump_threshold_deg:
                jumps.append(
                    _refine_jump(
                        eta, v_values[k], v_values[k + 1], row[k], row[k + 1],
                        params, spline, gains, settle, dt,
                    )
                )
    points.sort(key=lambda pt: (pt.v_i, pt.eta))
    return SweepResult(points=tuple(points), jumps=tuple(jumps))


def write_trim_csv(result: SweepResult, stream: IO[str]) -> None:
    stream.write("v_i,eta,theta_deg,alpha_e_deg,a_v,collective,differential,converged\n")
    for pt in result.points:
        stream.write(
            f"{pt.v_i:.9g},{pt.eta:.9g},{math.degrees(pt.theta_eq):.9g},"
            f"{math.degrees(pt.alpha_e_eq):.9g},{pt.a_v_true:.9g},"
            f"{pt.collective_eq:.9g},{pt.differential_eq:.9g},{int(pt.converged)}\n"
        )


def write_jump_csv(result: SweepResult, stream: IO[str]) -> None:
    stream.write("eta,v_jump,a_v_before,a_v_after,dalpha_deg\n")
    for j in result.jumps:
        stream.write(
            f"{j.eta:.9g},{j.v_jump:.9g},{j.a_v_before:.9g},"
            f"{j.a_v_after:.9g},{j.dalpha_deg:.9g}\n"
        )
