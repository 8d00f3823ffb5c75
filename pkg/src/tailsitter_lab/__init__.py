"""Deterministic planar flight-dynamics laboratory for a biplane tailsitter.

Subsystems: full-range airfoil polars and splines (:mod:`airfoil`),
prop-wash airflow model (:mod:`airflow`), point-mass dynamics with RK4
(:mod:`dynamics`), cascaded geometric tracking control
(:mod:`controller`), constant-altitude transition references
(:mod:`trajectory`), equilibrium/bifurcation/trim analysis
(:mod:`analysis`), and a scenario harness with CSV/JSON/SVG artifacts
(:mod:`harness`, :mod:`cli`).
"""

from .params import Gains, VehicleParams

__all__ = ["Gains", "VehicleParams"]

__version__ = "0.1.0"
