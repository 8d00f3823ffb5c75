"""Full-range airfoil polars and spline-based coefficient evaluation.

A polar table holds C_L, C_D, C_M samples over alpha in [-180, +180]
degrees (wind-tunnel convention). Each coefficient is fitted with a
natural cubic spline in degrees; evaluation wraps periodically and
returns per-radian derivatives so downstream stability expressions can
mix coefficients and their slopes consistently.
"""

from __future__ import annotations

import csv
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

DEG2RAD = math.pi / 180.0
RAD2DEG = 180.0 / math.pi

#: Allowed spline undershoot below zero for the drag coefficient.
EPS_INTERP = 1e-3

_ENDPOINT_TOL = 1e-9
_CSV_HEADER = ["alpha_deg", "cl", "cd", "cm"]


class AirfoilError(ValueError):
    """Base class for polar-table validation failures."""


class MalformedRow(AirfoilError):
    """A CSV row could not be parsed into four finite numbers."""


class DomainGap(AirfoilError):
    """The alpha samples do not span [-180, +180] inclusive."""


class NonPeriodic(AirfoilError):
    """The -180 and +180 rows disagree beyond tolerance."""


class DuplicateAlpha(AirfoilError):
    """Two samples share the same angle of attack."""


@dataclass(frozen=True)
class AeroTable:
    """Validated polar samples, sorted by alpha (degrees)."""

    alpha_deg: np.ndarray
    cl: np.ndarray
    cd: np.ndarray
    cm: np.ndarray
    reynolds: float | None = None
    name: str = ""

    def __post_init__(self) -> None:
        a = np.asarray(self.alpha_deg, dtype=float)
        if a.ndim != 1 or a.size < 4:
            raise AirfoilError("need at least 4 samples to fit a cubic spline")
        if any(np.asarray(v).shape != a.shape for v in (self.cl, self.cd, self.cm)):
            raise AirfoilError("coefficient columns must match alpha length")
        if not np.all(np.isfinite(a)):
            raise MalformedRow("non-finite alpha sample")
        d = np.diff(a)
        if np.any(d == 0.0):
            raise DuplicateAlpha("repeated alpha sample")
        if np.any(d < 0.0):
            raise AirfoilError("alpha samples must be sorted ascending")
        if abs(a[0] + 180.0) > _ENDPOINT_TOL or abs(a[-1] - 180.0) > _ENDPOINT_TOL:
            raise DomainGap("alpha range must cover [-180, +180] inclusive")
        for col, label in ((self.cl, "cl"), (self.cd, "cd"), (self.cm, "cm")):
            col = np.asarray(col, dtype=float)
            if not np.all(np.isfinite(col)):
                raise MalformedRow(f"non-finite {label} sample")
            if abs(col[0] - col[-1]) > _ENDPOINT_TOL:
                raise NonPeriodic(f"{label} differs between -180 and +180 rows")
        if np.any(np.asarray(self.cd, dtype=float) < 0.0):
            raise MalformedRow("negative drag coefficient sample")

    @property
    def n_samples(self) -> int:
        return int(np.asarray(self.alpha_deg).size)


@dataclass(frozen=True)
class AeroCoefficients:
    """Coefficients and per-radian slopes at one effective angle of attack."""

    c_l: float
    c_d: float
    c_m: float
    dc_l: float
    dc_d: float


@dataclass(frozen=True)
class AeroForces:
    """Dimensional lift, drag (N) and pitching moment (N m)."""

    lift: float
    drag: float
    pitch_moment: float


def _sorted_samples(rows: Iterable[Sequence[float]]) -> list[tuple[float, ...]]:
    samples = [tuple(float(v) for v in row) for row in rows]
    samples.sort(key=lambda r: r[0])
    return samples


def load_aero_table(
    source: IO[str],
    *,
    reynolds: float | None = None,
    name: str = "",
) -> AeroTable:
    """Parse a polar CSV stream (header ``alpha_deg,cl,cd,cm``).

    Rows are sorted by alpha before validation, so unordered files are
    accepted. Raises :class:`MalformedRow`, :class:`DomainGap`,
    :class:`NonPeriodic` or :class:`DuplicateAlpha` on invalid input.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow("empty airfoil file") from None
    if [h.strip() for h in header] != _CSV_HEADER:
        raise MalformedRow(f"expected header {','.join(_CSV_HEADER)!r}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 4:
            raise MalformedRow(f"line {lineno}: expected 4 fields")
        try:
            vals = tuple(float(v) for v in row)
        except ValueError as exc:
            raise MalformedRow(f"line {lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in vals):
            raise MalformedRow(f"line {lineno}: non-finite value")
        rows.append(vals)
    samples = _sorted_samples(rows)
    if len(samples) < 4:
        raise AirfoilError("need at least 4 samples to fit a cubic spline")
    cols = tuple(np.array(c) for c in zip(*samples))
    return AeroTable(cols[0], cols[1], cols[2], cols[3], reynolds=reynolds, name=name)


def load_aero_table_file(path, **kwargs) -> AeroTable:
    """Convenience wrapper: open ``path`` and delegate to load_aero_table."""
    with open(path, newline="") as fh:
        return load_aero_table(fh, name=kwargs.pop("name", str(path)), **kwargs)


class AeroSpline:
    """Natural cubic splines of C_L, C_D, C_M over alpha in degrees.

    Immutable after construction; evaluation outside [-180, 180] wraps
    periodically (the table guarantees equal endpoint values). Scalar
    evaluation avoids scipy call overhead on the simulation hot path;
    array arguments go through the underlying PPoly objects.
    """

    __slots__ = (
        "table",
        "_x",
        "_xlist",
        "_cl",
        "_cd",
        "_cm",
        "_dcl",
        "_dcd",
        "_dcm",
        "_coef",
    )

    def __init__(self, table: AeroTable):
        self.table = table
        x = np.asarray(table.alpha_deg, dtype=float)
        self._x = x
        self._xlist = x.tolist()
        self._cl = CubicSpline(x, table.cl, bc_type="natural")
        self._cd = CubicSpline(x, table.cd, bc_type="natural")
        self._cm = CubicSpline(x, table.cm, bc_type="natural")
        self._dcl = self._cl.derivative()
        self._dcd = self._cd.derivative()
        self._dcm = self._cm.derivative()
        # per-interval (c3, c2, c1, c0) tuples for the fast scalar path
        self._coef = tuple(
            tuple(map(tuple, np.asarray(s.c).T)) for s in (self._cl, self._cd, self._cm)
        )

    @staticmethod
    def _wrap_deg(alpha_deg: float) -> float:
        if -180.0 <= alpha_deg <= 180.0:
            return alpha_deg
        return (alpha_deg + 180.0) % 360.0 - 180.0

    def _eval_one(self, which: int, a_deg: float, derivative: bool):
        i = bisect_right(self._xlist, a_deg) - 1
        if i < 0:
            i = 0
        elif i > len(self._xlist) - 2:
            i = len(self._xlist) - 2
        t = a_deg - self._xlist[i]
        c3, c2, c1, c0 = self._coef[which][i]
        val = ((c3 * t + c2) * t + c1) * t + c0
        if not derivative:
            return val, 0.0
        dval = (3.0 * c3 * t + 2.0 * c2) * t + c1
        return val, dval * RAD2DEG

    def _eval(self, which: int, alpha_rad, derivative: bool = False):
        if isinstance(alpha_rad, (float, int)):
            a = self._wrap_deg(alpha_rad * RAD2DEG)
            val, dval = self._eval_one(which, a, derivative)
            return (val, dval) if derivative else val
        a = np.asarray(alpha_rad, dtype=float) * RAD2DEG
        a = (a + 180.0) % 360.0 - 180.0
        spl = (self._cl, self._cd, self._cm)[which]
        if derivative:
            dspl = (self._dcl, self._dcd, self._dcm)[which]
            return spl(a), dspl(a) * RAD2DEG
        return spl(a)

    def cl(self, alpha_rad):
        """Lift coefficient at alpha (radians); accepts scalars or arrays."""
        return self._eval(0, alpha_rad)

    def cd(self, alpha_rad):
        return self._eval(1, alpha_rad)

    def cm(self, alpha_rad):
        return self._eval(2, alpha_rad)

    def cl_with_slope(self, alpha_rad):
        """(C_L, dC_L/dalpha) with the slope per radian."""
        return self._eval(0, alpha_rad, derivative=True)

    def cd_with_slope(self, alpha_rad):
        return self._eval(1, alpha_rad, derivative=True)

    def eval_scalar(self, alpha_rad: float) -> tuple[float, float, float, float, float]:
        """(c_l, c_d, c_m, dc_l, dc_d) at one angle, slopes per radian."""
        a = self._wrap_deg(alpha_rad * RAD2DEG)
        c_l, dc_l = self._eval_one(0, a, True)
        c_d, dc_d = self._eval_one(1, a, True)
        c_m, _ = self._eval_one(2, a, False)
        return c_l, c_d, c_m, dc_l, dc_d


def fit_spline(table: AeroTable) -> AeroSpline:
    """Fit natural cubic splines to each coefficient column."""
    return AeroSpline(table)


def eval_coeffs(spline: AeroSpline, alpha_e: float) -> AeroCoefficients:
    """Coefficient values and per-radian slopes at one effective AoA."""
    c_l, c_d, c_m, dc_l, dc_d = spline.eval_scalar(float(alpha_e))
    return AeroCoefficients(c_l=c_l, c_d=c_d, c_m=c_m, dc_l=dc_l, dc_d=dc_d)


def aero_forces(coeffs: AeroCoefficients, v_a: float, params) -> AeroForces:
    """Dimensional forces from dynamic pressure over one wing planform.

    L and D scale with 0.5 * rho * V_a^2 * S; the pitching moment carries
    an extra chord factor.
    """
    if v_a < 0.0:
        raise ValueError("airspeed must be non-negative")
    q_s = 0.5 * params.rho * v_a * v_a * params.s_wing
    return AeroForces(
        lift=q_s * coeffs.c_l,
        drag=q_s * coeffs.c_d,
        pitch_moment=q_s * params.c_bar * coeffs.c_m,
    )
