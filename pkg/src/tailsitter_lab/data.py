"""Locations of the bundled polar tables.

The environment variable ``TAILSITTER_DATA_DIR`` overrides the packaged
data directory, so a user-supplied wind-tunnel table with the standard
file names is picked up without code changes.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_DATA_DIR = "TAILSITTER_DATA_DIR"

NACA0015_FILENAME = "naca0015_re160k.csv"
FLAT_PLATE_FILENAME = "flat_plate.csv"


def data_dir() -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(resources.files("tailsitter_lab") / "data")


def default_airfoil_path() -> Path:
    """The NACA 0015 style polar used by the built-in scenarios."""
    return data_dir() / NACA0015_FILENAME


def flat_plate_path() -> Path:
    """Synthetic analytic polar for hermetic tests."""
    return data_dir() / FLAT_PLATE_FILENAME
