#!/usr/bin/env python3
"""Regenerate the bundled synthetic datasets under data/.

Both bundles use V_a = a ln(d / 1 um) + b with a = 3 mV, b = 5 mV.  The
measured force files are a Casimir-like 1/d^3 component plus the computed
electrostatic background, so a correct pipeline run recovers the 1/d^3 part
exactly.  Deterministic: rerunning reproduces the files byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from contactbg import (
    CapacitanceModel,
    Extrapolation,
    GeometryKind,
    PlateGeometry,
    TabulatedVa,
    background_curve,
    solve_vc,
)
from contactbg.dataio import write_csv

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

A_COEFF = 3e-3
B_COEFF = 5e-3
D0 = 1e-6


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    g = np.exp(np.linspace(np.log(lo), np.log(hi), n))
    g[0], g[-1] = lo, hi  # exact endpoints
    return g


def va_samples(d: np.ndarray) -> np.ndarray:
    return A_COEFF * np.log(d / D0) + B_COEFF


def build_parallel() -> None:
    geometry = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1e-4)
    model = CapacitanceModel(geometry, domain=(1e-9, 1e-1))
    d_va = log_grid(1e-6, 100e-6, 80)          # out to 100x the closest approach
    va = va_samples(d_va)
    write_csv(DATA_DIR / "va_parallel.csv", ["d_m", "va_V"], [d_va, va])

    d_force = log_grid(1e-6, 10e-6, 50)
    profile = TabulatedVa(d_va, va, Extrapolation.LOG_FIT)
    solution = solve_vc(profile, model, d_force, float(d_va[-1]))
    background = background_curve(profile, model, solution)
    casimir_like = 5e-27 / d_force**3
    write_csv(DATA_DIR / "force_parallel.csv", ["d_m", "F_N"],
              [d_force, casimir_like + background.f])


def build_sphere() -> None:
    geometry = PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=150e-6,
                             debye_length=0.68e-6, relative_permittivity=16.0,
                             screened_surfaces=2)
    model = CapacitanceModel(geometry, domain=(1e-9, 1e-1))
    d_va = log_grid(1e-6, 5e-3, 120)           # out to 100x the farthest force point
    va = va_samples(d_va)
    write_csv(DATA_DIR / "va_sphere.csv", ["d_m", "va_V"], [d_va, va])

    d_force = log_grid(1e-6, 50e-6, 60)
    profile = TabulatedVa(d_va, va, Extrapolation.LOG_FIT)
    solution = solve_vc(profile, model, d_force, float(d_va[-1]))
    background = background_curve(profile, model, solution)
    casimir_like = 2e-31 / d_force**3
    write_csv(DATA_DIR / "force_sphere.csv", ["d_m", "F_N"],
              [d_force, casimir_like + background.f])


if __name__ == "__main__":
    DATA_DIR.mkdir(exist_ok=True)
    build_parallel()
    build_sphere()
    print(f"wrote datasets into {DATA_DIR}")
