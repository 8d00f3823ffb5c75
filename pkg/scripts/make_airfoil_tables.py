#!/usr/bin/env python3
"""Generate the bundled polar tables in src/tailsitter_lab/data/.

The NACA 0015 style table is produced from a parametric full-range polar
model (linear lift line blended into a flat-plate backbone with a deep
leading-edge stall valley) whose free parameters are calibrated so the
fitted spline reproduces the documented equilibrium structure of this
airfoil at Re = 160k: fold points of the aerodynamic-loading curve at
a_v = 1.18 and 3.82 and the equilibrium triple {3.63, 12.8, 17.4} deg at
a_v = 2.5. The flat-plate table is a fixed closed form.

Run from the repository root:  python scripts/make_airfoil_tables.py
"""

from __future__ import annotations

import io
import math
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tailsitter_lab.airfoil import AeroTable, fit_spline, load_aero_table  # noqa: E402
from tailsitter_lab.analysis import a_v_of_alpha, find_equilibria, stability_classify  # noqa: E402

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "tailsitter_lab" / "data"

# fixed drag model
CD0 = 0.011
K_CD = 1.10  # pre-stall quadratic drag, per rad^2
CD90 = 1.72

# anchor targets for the loading curve a_v(alpha)
ROOTS_AT_2P5 = (3.63, 12.8, 17.4)  # deg
FOLD_LOW = 1.18
FOLD_HIGH = 3.88
FOLD_LOW_ALPHA = 9.25  # deg, soft target
FOLD_HIGH_ALPHA = 14.1  # deg, soft target

SAMPLE_ALPHAS = np.concatenate(
    [
        np.arange(0.0, 30.5, 1.0),
        np.arange(32.0, 50.5, 2.0),
        np.arange(55.0, 90.5, 5.0),
        np.arange(100.0, 170.5, 10.0),
        np.array([175.0, 180.0]),
    ]
)


def polar_model(alpha_deg: np.ndarray, p: np.ndarray):
    """(cl, cd, cm) of the parametric polar at alpha >= 0 in degrees."""
    k_lin, a_blend, w_blend, k_fp, d_dip, a_dip, w_dip = p
    a = np.asarray(alpha_deg, dtype=float)
    rad = np.radians(a)
    sigma = 1.0 / (1.0 + np.exp(np.clip((a - a_blend) / w_blend, -60.0, 60.0)))
    cl_pre = k_lin * np.sin(rad)
    cl_post = k_fp * np.sin(2.0 * rad)
    dip = d_dip * np.exp(-(((a - a_dip) / w_dip) ** 2))
    cl = sigma * cl_pre + (1.0 - sigma) * cl_post - dip
    cd = sigma * (CD0 + K_CD * rad * rad) + (1.0 - sigma) * (
        CD0 + (CD90 - CD0) * np.sin(rad) ** 2
    )
    c_n = cl * np.cos(rad) + cd * np.sin(rad)
    cm = -0.25 * (1.0 - sigma) * c_n
    return cl, cd, cm


def build_table(p: np.ndarray, decimals: int | None = 4) -> AeroTable:
    pos = SAMPLE_ALPHAS
    cl_p, cd_p, cm_p = polar_model(pos, p)
    alpha = np.concatenate([-pos[:0:-1], pos])
    cl = np.concatenate([-cl_p[:0:-1], cl_p])
    cd = np.concatenate([cd_p[:0:-1], cd_p])
    cm = np.concatenate([-cm_p[:0:-1], cm_p])
    if decimals is not None:
        cl, cd, cm = (np.round(c, decimals) for c in (cl, cd, cm))
        cd = np.maximum(cd, 0.0)
    return AeroTable(alpha, cl, cd, cm, reynolds=160_000.0, name="naca0015-re160k")


_FINE_DEG = np.arange(0.2, 90.0001, 0.02)
_FINE_RAD = np.radians(_FINE_DEG)
_LOW_WIN = (_FINE_DEG > 4.0) & (_FINE_DEG < 12.6)
_HIGH_WIN = (_FINE_DEG > 12.9) & (_FINE_DEG < 17.35)


def curve_metrics(table: AeroTable) -> dict:
    spline = fit_spline(table)
    curve = a_v_of_alpha(_FINE_RAD, spline)
    lo = np.argmin(curve[_LOW_WIN])
    hi = np.argmax(curve[_HIGH_WIN])
    at = lambda deg: a_v_of_alpha(math.radians(deg), spline)  # noqa: E731
    return {
        "a_v_roots": tuple(at(d) for d in ROOTS_AT_2P5),
        "fold_low": float(curve[_LOW_WIN][lo]),
        "fold_low_alpha": float(_FINE_DEG[_LOW_WIN][lo]),
        "fold_high": float(curve[_HIGH_WIN][hi]),
        "fold_high_alpha": float(_FINE_DEG[_HIGH_WIN][hi]),
        "min_cl": float(np.min(spline.cl(np.radians(np.arange(3.0, 80.0, 0.1))))),
        "curve": curve,
        "spline": spline,
    }


def objective(p: np.ndarray) -> float:
    try:
        m = curve_metrics(build_table(p, decimals=None))
    except Exception:
        return 1e6
    r = [
        m["a_v_roots"][0] - 2.5,
        m["a_v_roots"][1] - 2.5,
        m["a_v_roots"][2] - 2.5,
        3.0 * (m["fold_low"] - FOLD_LOW),
        1.5 * (m["fold_high"] - FOLD_HIGH),
        0.15 * (m["fold_low_alpha"] - FOLD_LOW_ALPHA),
        0.15 * (m["fold_high_alpha"] - FOLD_HIGH_ALPHA),
    ]
    penalty = 0.0
    if m["min_cl"] < 0.05:
        penalty += 10.0 * (0.05 - m["min_cl"])
    # loading curve must fall monotonically past the high fold
    tail = m["curve"][_FINE_DEG > 17.6]
    rises = np.diff(tail)
    penalty += 50.0 * float(np.sum(rises[rises > 0.0]))
    return float(np.dot(r, r)) + penalty


def calibrate() -> np.ndarray:
    x0 = np.array([6.30, 10.2, 0.9, 1.05, 0.32, 15.2, 2.2])
    best = None
    for seed_scale in (1.0, 0.97, 1.03):
        res = minimize(
            objective,
            x0 * seed_scale,
            method="Nelder-Mead",
            options={"maxiter": 4000, "xatol": 1e-6, "fatol": 1e-12, "adaptive": True},
        )
        if best is None or res.fun < best.fun:
            best = res
    res = minimize(
        objective,
        best.x,
        method="Nelder-Mead",
        options={"maxiter": 4000, "xatol": 1e-7, "fatol": 1e-13, "adaptive": True},
    )
    return res.x if res.fun < best.fun else best.x


def write_table(table: AeroTable, path: Path) -> None:
    buf = io.StringIO()
    buf.write("alpha_deg,cl,cd,cm\n")
    for a, cl, cd, cm in zip(table.alpha_deg, table.cl, table.cd, table.cm):
        buf.write(f"{a:g},{cl:.4f},{cd:.4f},{cm:.4f}\n")
    path.write_text(buf.getvalue())


def write_flat_plate(path: Path) -> None:
    alpha = np.arange(-180.0, 180.5, 5.0)
    rad = np.radians(alpha)
    cl = 1.1 * np.sin(2.0 * rad)
    cd = 0.02 + 1.35 * np.sin(rad) ** 2
    cm = -0.05 * np.sin(rad)
    buf = io.StringIO()
    buf.write("alpha_deg,cl,cd,cm\n")
    for a, l, d, m in zip(alpha, cl, cd, cm):
        buf.write(f"{a:g},{l:.6f},{d:.6f},{m:.6f}\n")
    path.write_text(buf.getvalue())


def verify(path: Path) -> None:
    with open(path, newline="") as fh:
        table = load_aero_table(fh, reynolds=160_000.0, name=path.stem)
    m = curve_metrics(table)
    spline = m["spline"]
    roots = [math.degrees(r) for r in find_equilibria(2.5, spline)]
    labels = [stability_classify(math.radians(r), spline).stable for r in roots]
    print(f"  roots at a_v=2.5: {[f'{r:.3f}' for r in roots]} stable={labels}")
    print(
        f"  folds: low {m['fold_low']:.4f} @ {m['fold_low_alpha']:.2f} deg, "
        f"high {m['fold_high']:.4f} @ {m['fold_high_alpha']:.2f} deg"
    )
    print(f"  min C_L on (3, 80) deg: {m['min_cl']:.4f}")
    assert len(roots) == 3, "expected an equilibrium triple at a_v = 2.5"
    for r, want in zip(roots, ROOTS_AT_2P5):
        assert abs(r - want) < 0.35, (r, want)
    assert abs(m["fold_low"] - FOLD_LOW) < 0.04
    assert abs(m["fold_high"] - FOLD_HIGH) < 0.04
    assert labels[0] and not labels[1], "low root stable, middle unstable"


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    print("calibrating polar model ...")
    p = calibrate()
    names = ("k_lin", "a_blend", "w_blend", "k_fp", "d_dip", "a_dip", "w_dip")
    print("  parameters: " + ", ".join(f"{n}={v:.5f}" for n, v in zip(names, p)))
    table = build_table(p)
    out = DATA_DIR / "naca0015_re160k.csv"
    write_table(table, out)
    print(f"wrote {out} ({table.n_samples} rows)")
    verify(out)
    flat = DATA_DIR / "flat_plate.csv"
    write_flat_plate(flat)
    print(f"wrote {flat}")


if __name__ == "__main__":
    main()
