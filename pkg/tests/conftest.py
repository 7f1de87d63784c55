from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from contactbg import (
    CapacitanceModel,
    Extrapolation,
    GeometryKind,
    ParametricVa,
    PlateGeometry,
    TabulatedVa,
)

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def parallel_model() -> CapacitanceModel:
    geometry = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1e-4)
    return CapacitanceModel(geometry, domain=(1e-9, 1e-1))


@pytest.fixture
def sphere_model() -> CapacitanceModel:
    geometry = PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=150e-6,
                             debye_length=0.68e-6, relative_permittivity=16.0,
                             screened_surfaces=2)
    return CapacitanceModel(geometry, domain=(1e-9, 1e-1))


@pytest.fixture
def log_profile() -> ParametricVa:
    return ParametricVa(a=3e-3, b=5e-3, d0=1e-6)


@pytest.fixture
def sphere_va_profile() -> TabulatedVa:
    data = np.loadtxt(DATA_DIR / "va_sphere.csv", delimiter=",", skiprows=1)
    return TabulatedVa(data[:, 0], data[:, 1], Extrapolation.LOG_FIT)


def micro_grid(lo_um: float = 1.0, hi_um: float = 50.0, n: int = 60) -> np.ndarray:
    return np.logspace(np.log10(lo_um), np.log10(hi_um), n) * 1e-6
