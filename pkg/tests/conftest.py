"""Shared fixtures: bundled polars and default parameters."""

import io
import math

import numpy as np
import pytest

from tailsitter_lab import Gains, VehicleParams
from tailsitter_lab import data as data_files
from tailsitter_lab.airfoil import AeroTable, fit_spline, load_aero_table_file


@pytest.fixture(scope="session")
def params():
    return VehicleParams()


@pytest.fixture(scope="session")
def gains():
    return Gains()


@pytest.fixture(scope="session")
def naca_table():
    return load_aero_table_file(data_files.default_airfoil_path(), reynolds=160_000.0)


@pytest.fixture(scope="session")
def naca_spline(naca_table):
    return fit_spline(naca_table)


@pytest.fixture(scope="session")
def flat_plate_table():
    return load_aero_table_file(data_files.flat_plate_path())


@pytest.fixture(scope="session")
def flat_plate_spline(flat_plate_table):
    return fit_spline(flat_plate_table)


def make_table(fn_cl, fn_cd, fn_cm, alpha_deg=None, **kwargs):
    """Synthetic polar sampled from closed-form coefficient functions."""
    if alpha_deg is None:
        alpha_deg = np.arange(-180.0, 180.5, 1.0)
    rad = np.radians(alpha_deg)
    return AeroTable(
        np.asarray(alpha_deg, dtype=float),
        np.array([fn_cl(a) for a in rad]),
        np.array([fn_cd(a) for a in rad]),
        np.array([fn_cm(a) for a in rad]),
        **kwargs,
    )


@pytest.fixture(scope="session")
def zero_spline():
    """All-zero aerodynamics: the vehicle reduces to a planar quadrotor."""
    return fit_spline(make_table(lambda a: 0.0, lambda a: 0.0, lambda a: 0.0,
                                 alpha_deg=np.arange(-180.0, 180.5, 5.0)))


@pytest.fixture(scope="session")
def drag_only_spline():
    """Zero lift, constant drag: used for energy-dissipation checks."""
    return fit_spline(make_table(lambda a: 0.0, lambda a: 0.5, lambda a: 0.0,
                                 alpha_deg=np.arange(-180.0, 180.5, 5.0)))
