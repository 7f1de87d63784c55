#!/usr/bin/env python3
"""Capacitance models: parallel-plate and sphere-plate, with Debye screening.

Walks through the two supported geometries, shows how the screening
correction enters as an effective gap, and checks the sphere-plate closed
form against direct quadrature of the pairwise-additive integral.

Run:  python demos/01_capacitance_models.py [--plot]
"""

import sys

import numpy as np

from contactbg import (
    CapacitanceModel,
    DerivativeMode,
    GeometryKind,
    PlateGeometry,
    effective_gap,
)

# --- a Ge-like setup: lambda = 0.68 um, epsilon = 16, both surfaces screened
ge = dict(debye_length=0.68e-6, relative_permittivity=16.0, screened_surfaces=2)

plates = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1e-4, **ge)
sphere = PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=150e-6, **ge)

print("Effective gap: the screening correction adds k * lambda/epsilon")
for d in (1e-6, 5e-6, 20e-6):
    print(f"  d = {d * 1e6:5.1f} um  ->  d_eff = {effective_gap(d, plates) * 1e6:.4f} um")

print("\nParallel plate, A = 1 cm^2 (C ~ 1/d_eff):")
pp = CapacitanceModel(plates, domain=(1e-8, 1e-2))
for d in (1e-6, 10e-6, 100e-6):
    print(f"  d = {d * 1e6:6.1f} um   C = {pp.capacitance(d):.4e} F   C' = {pp.derivative(d):.4e} F/m")

print("\nSphere plate, R = 150 um (pairwise-additive closed form):")
sp = CapacitanceModel(sphere, domain=(1e-8, 1e-2))
for d in (1e-6, 10e-6, 100e-6):
    closed = sp.capacitance(d)
    quadr = sp.capacitance_quadrature(d)
    print(f"  d = {d * 1e6:6.1f} um   C = {closed:.6e} F   "
          f"quadrature agrees to {abs(quadr - closed) / closed:.1e}")

print("\nDerivative modes agree (analytic vs central difference + Richardson):")
sp_numeric = CapacitanceModel(sphere, DerivativeMode.NUMERIC_CENTRAL, domain=(1e-8, 1e-2))
for d in (2e-6, 30e-6):
    a, n = sp.derivative(d), sp_numeric.derivative(d)
    print(f"  d = {d * 1e6:5.1f} um   analytic {a:.8e}   numeric {n:.8e}   rel {abs(a - n) / abs(a):.1e}")

if "--plot" in sys.argv:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    d = np.logspace(-6.3, -3.5, 200)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(d * 1e6, pp.capacitance(d) * 1e15, label="parallel plate (1 cm$^2$)")
    ax.loglog(d * 1e6, sp.capacitance(d) * 1e15, label="sphere plate (R = 150 um)")
    ax.set_xlabel("separation (um)")
    ax.set_ylabel("C (fF)")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demos/01_capacitance_models.png", dpi=150)
    print("\nwrote demos/01_capacitance_models.png")
