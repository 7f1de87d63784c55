"""Capacitance models for parallel-plate and sphere-plate geometries.

Both geometries support a Debye-screening correction in which each screened
surface adds lambda/epsilon to the vacuum gap.  The sphere-plate capacitance
is built from local parallel-plate elements integrated over the facing
hemisphere (pairwise additive construction); its closed form is

    C(d) = 2 pi eps0 [ (R + g0) ln(1 + R/g0) - R ],   g0 = effective gap,

which the quadrature evaluator must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericError, RangeError

VACUUM_PERMITTIVITY = 8.8541878128e-12  # F/m

Array = np.ndarray


class GeometryKind(Enum):
    PARALLEL_PLATE = "parallel_plate"
    SPHERE_PLATE = "sphere_plate"


class DerivativeMode(Enum):
    ANALYTIC = "analytic"
    NUMERIC_CENTRAL = "numeric_central"


@dataclass(frozen=True)
class PlateGeometry:
    """Physical configuration of the two facing conductors.

    Parameters
    ----------
    kind : GeometryKind
        Parallel-plate or sphere-plate arrangement.
    plate_area : float
        Facing area in m^2 (parallel-plate only).
    sphere_radius : float
        Sphere radius R in m (sphere-plate only).
    debye_length : float
        Field-penetration depth lambda in m; 0 disables screening.
    relative_permittivity : float
        Dielectric constant epsilon of the screened material (>= 1).
    screened_surfaces : int
        How many of the two facing surfaces receive the lambda/epsilon
        gap correction (0, 1 or 2).
    """

    kind: GeometryKind
    plate_area: float = 0.0
    sphere_radius: float = 0.0
    debye_length: float = 0.0
    relative_permittivity: float = 1.0
    screened_surfaces: int = 2

    def __post_init__(self) -> None:
        if self.kind is GeometryKind.PARALLEL_PLATE and self.plate_area <= 0.0:
            raise DomainError("plate_area must be > 0 for a parallel-plate geometry")
        if self.kind is GeometryKind.SPHERE_PLATE and self.sphere_radius <= 0.0:
            raise DomainError("sphere_radius must be > 0 for a sphere-plate geometry")
        if self.debye_length < 0.0:
            raise DomainError("debye_length must be >= 0")
        if self.relative_permittivity < 1.0:
            raise DomainError("relative_permittivity must be >= 1")
        if self.screened_surfaces not in (0, 1, 2):
            raise DomainError("screened_surfaces must be 0, 1 or 2")


def effective_gap(d, geometry: PlateGeometry):
    """Separation corrected for Debye screening: d + k * lambda / epsilon.

    Identity map when ``debye_length`` is zero.  Accepts scalars or arrays;
    any non-positive separation raises :class:`DomainError`.
    """
    d_arr = np.asarray(d, dtype=float)
    if np.any(d_arr <= 0.0):
        raise DomainError("separation d must be > 0")
    out = d_arr + geometry.screened_surfaces * geometry.debye_length / geometry.relative_permittivity
    return float(out) if np.ndim(d) == 0 else out


@dataclass(frozen=True)
class CapacitanceModel:
    """Evaluable C(d) with derivative, valid over an explicit domain.

    ``derivative_mode`` selects how ``derivative`` is produced: the closed
    form of each geometry, or a central difference with one Richardson
    extrapolation level (relative step 1e-5 * d).
    """

    geometry: PlateGeometry
    derivative_mode: DerivativeMode = DerivativeMode.ANALYTIC
    domain: tuple[float, float] = (1e-9, 1.0)

    def __post_init__(self) -> None:
        lo, hi = self.domain
        if not (0.0 < lo < hi):
            raise DomainError(f"invalid capacitance domain [{lo}, {hi}]")

    def _check_domain(self, d) -> Array:
        d_arr = np.asarray(d, dtype=float)
        lo, hi = self.domain
        if np.any(d_arr < lo) or np.any(d_arr > hi):
            bad = d_arr if d_arr.ndim == 0 else d_arr[(d_arr < lo) | (d_arr > hi)][0]
            raise RangeError(f"separation {float(bad):g} m outside model domain [{lo:g}, {hi:g}] m")
        return d_arr

    def capacitance(self, d):
        """C(d) in farads, by the closed form of the configured geometry."""
        d_arr = self._check_domain(d)
        g0 = effective_gap(d_arr, self.geometry)
        if self.geometry.kind is GeometryKind.PARALLEL_PLATE:
            out = VACUUM_PERMITTIVITY * self.geometry.plate_area / g0
        else:
            r = self.geometry.sphere_radius
            out = 2.0 * np.pi * VACUUM_PERMITTIVITY * ((r + g0) * np.log1p(r / g0) - r)
        return float(out) if np.ndim(d) == 0 else out

    def capacitance_quadrature(self, d) -> float:
        """Sphere-plate C(d) by numerical quadrature of the pairwise integral.

        Integrates 2 pi eps0 r / g(r) over the facing hemisphere, with the
        substitution r = R sin(theta) to keep the integrand smooth.  Scalar
        only; used to cross-check the closed form.
        """
        if self.geometry.kind is not GeometryKind.SPHERE_PLATE:
            raise DomainError("quadrature evaluation is defined for sphere-plate geometry only")
        d_arr = self._check_domain(d)
        g0 = effective_gap(float(d_arr), self.geometry)
        r = self.geometry.sphere_radius

        def integrand(theta: float) -> float:
            return (2.0 * np.pi * VACUUM_PERMITTIVITY * r * r * np.sin(theta) * np.cos(theta)
                    / (g0 + r * (1.0 - np.cos(theta))))

        value, err_est = quad(integrand, 0.0, np.pi / 2.0, epsabs=0.0, epsrel=1e-12, limit=200)
        if not np.isfinite(value) or err_est > 1e-8 * abs(value):
            raise NumericError(
                f"pairwise-additive quadrature did not converge at d={float(d_arr):g} m "
                f"(value={value:g}, error estimate={err_est:g})")
        return value

    def _analytic_derivative(self, d_arr: Array):
        g0 = effective_gap(d_arr, self.geometry)
        if self.geometry.kind is GeometryKind.PARALLEL_PLATE:
            return -VACUUM_PERMITTIVITY * self.geometry.plate_area / g0**2
        r = self.geometry.sphere_radius
        return 2.0 * np.pi * VACUUM_PERMITTIVITY * (np.log1p(r / g0) - r / g0)

    def derivative(self, d):
        """dC/dd in F/m; strictly negative over the domain."""
        d_arr = self._check_domain(d)
        if self.derivative_mode is DerivativeMode.ANALYTIC:
            out = self._analytic_derivative(d_arr)
        else:
            h = 1e-5 * d_arr
            lo, hi = self.domain
            if np.any(d_arr - h < lo) or np.any(d_arr + h > hi):
                raise RangeError("finite-difference stencil exits the model domain")
            out = richardson_derivative(self.capacitance, d_arr, h)
        return float(out) if np.ndim(d) == 0 else out


def central_derivative(f, x, h):
    """Second-order central difference (f(x+h) - f(x-h)) / 2h."""
    return (f(x + h) - f(x - h)) / (2.0 * np.asarray(h, dtype=float))


def richardson_derivative(f, x, h):
    """Central difference at steps h and h/2, one Richardson level (4th order)."""
    coarse = central_derivative(f, x, h)
    fine = central_derivative(f, x, np.asarray(h, dtype=float) / 2.0)
    return (4.0 * fine - coarse) / 3.0


def capacitance(model: CapacitanceModel, d):
    """C(d) for the given model; see :meth:`CapacitanceModel.capacitance`."""
    return model.capacitance(d)


def capacitance_derivative(model: CapacitanceModel, d):
    """dC/dd for the given model; see :meth:`CapacitanceModel.derivative`."""
    return model.derivative(d)
