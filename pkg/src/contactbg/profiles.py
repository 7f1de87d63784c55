"""Minimizing-voltage profiles V_a(d) and their logarithmic fits.

A profile is either parametric, v = a ln(d/d0) + b, or tabulated measurement
samples interpolated monotonically in (ln d, v).  Tabulated profiles can
extrapolate beyond the sampled range with a log fit over the outermost
decade of samples, or refuse to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from .capacitance import GeometryKind, PlateGeometry, effective_gap
from .errors import (
    DegenerateDesignError,
    DomainError,
    InsufficientDataError,
    NumericError,
    RangeError,
)


class Extrapolation(Enum):
    FORBID = "forbid"
    LOG_FIT = "log_fit"


class LogFit(NamedTuple):
    a: float
    b: float
    rms_residual: float


def fit_log_profile(samples, d0: float = 1e-6) -> LogFit:
    """Least-squares fit of v = a ln(d/d0) + b.

    Parameters
    ----------
    samples : array-like, shape (n, 2)
        Rows of (separation in m, voltage in V); needs >= 3 distinct
        separations, all positive.
    d0 : float
        Reference length making the log argument dimensionless.

    Returns
    -------
    LogFit
        Fitted (a, b) in volts and the RMS of the fit residuals.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("samples must be pairs of (separation, voltage)")
    d, v = arr[:, 0], arr[:, 1]
    if np.any(d <= 0.0):
        raise DomainError("all separations must be > 0")
    if d0 <= 0.0:
        raise DomainError("reference length d0 must be > 0")
    n_distinct = np.unique(d).size
    if arr.shape[0] >= 1 and n_distinct == 1:
        raise DegenerateDesignError("all separations are equal; slope is undetermined")
    if n_distinct < 3:
        raise InsufficientDataError(f"need >= 3 distinct separations, got {n_distinct}")
    x = np.log(d / d0)
    a, b = np.polyfit(x, v, 1)
    res = v - (a * x + b)
    return LogFit(float(a), float(b), float(np.sqrt(np.mean(res**2))))


@dataclass(frozen=True)
class ParametricVa:
    """V_a(d) = a ln(d/d0) + b, defined for all d > 0."""

    a: float
    b: float
    d0: float = 1e-6

    def __post_init__(self) -> None:
        if self.d0 <= 0.0:
            raise DomainError("reference length d0 must be > 0")

    def evaluate(self, d):
        d_arr = np.asarray(d, dtype=float)
        if np.any(d_arr <= 0.0):
            raise DomainError("separation d must be > 0")
        out = self.a * np.log(d_arr / self.d0) + self.b
        return float(out) if np.ndim(d) == 0 else out

    def shifted(self, delta: float) -> "ParametricVa":
        """Profile with a constant voltage offset added."""
        return ParametricVa(self.a, self.b + delta, self.d0)


@dataclass(frozen=True)
class TabulatedVa:
    """Measured (d, v) samples, interpolated by a monotone cubic in (ln d, v)."""

    d: np.ndarray
    v: np.ndarray
    extrapolation: Extrapolation = Extrapolation.FORBID
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)
    _low_fit: LogFit = field(init=False, repr=False, compare=False)
    _high_fit: LogFit = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        d = np.asarray(self.d, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if d.ndim != 1 or d.shape != v.shape:
            raise DomainError("d and v must be 1-d arrays of equal length")
        if d.size < 4:
            raise InsufficientDataError(f"tabulated profile needs >= 4 samples, got {d.size}")
        if np.any(d <= 0.0):
            raise DomainError("all separations must be > 0")
        if np.any(np.diff(d) <= 0.0):
            raise DomainError("separations must be strictly increasing")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "_interp", PchipInterpolator(np.log(d), v, extrapolate=False))
        object.__setattr__(self, "_low_fit", self._decade_fit(low=True))
        object.__setattr__(self, "_high_fit", self._decade_fit(low=False))

    def _decade_fit(self, low: bool) -> LogFit:
        # log fit over the outermost decade of samples at the given end,
        # widened to at least 3 samples
        if low:
            mask = self.d <= 10.0 * self.d[0]
            idx = np.flatnonzero(mask)
            if idx.size < 3:
                idx = np.arange(3)
        else:
            mask = self.d >= self.d[-1] / 10.0
            idx = np.flatnonzero(mask)
            if idx.size < 3:
                idx = np.arange(self.d.size - 3, self.d.size)
        return fit_log_profile(np.column_stack([self.d[idx], self.v[idx]]), d0=1.0)

    @classmethod
    def from_samples(cls, samples, extrapolation: Extrapolation = Extrapolation.FORBID) -> "TabulatedVa":
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError("samples must be pairs of (separation, voltage)")
        return cls(arr[:, 0], arr[:, 1], extrapolation)

    def evaluate(self, d):
        d_arr = np.asarray(d, dtype=float)
        if np.any(d_arr <= 0.0):
            raise DomainError("separation d must be > 0")
        below = d_arr < self.d[0]
        above = d_arr > self.d[-1]
        if self.extrapolation is Extrapolation.FORBID and (np.any(below) or np.any(above)):
            raise RangeError(
                f"separation outside sampled range [{self.d[0]:g}, {self.d[-1]:g}] m "
                "and extrapolation is forbidden")
        x = np.log(d_arr)
        out = np.asarray(self._interp(x), dtype=float)
        if np.any(below):
            out = np.where(below, self._low_fit.a * x + self._low_fit.b, out)
        if np.any(above):
            out = np.where(above, self._high_fit.a * x + self._high_fit.b, out)
        return float(out) if np.ndim(d) == 0 else out

    def shifted(self, delta: float) -> "TabulatedVa":
        return TabulatedVa(self.d.copy(), self.v + delta, self.extrapolation)


VaProfile = Union[ParametricVa, TabulatedVa]


def evaluate_va(profile: VaProfile, d):
    """V_a at separation d (scalar or array), honoring the extrapolation policy."""
    return profile.evaluate(d)


@dataclass(frozen=True)
class SurfaceModel:
    """Radial surface-potential gradient v(r) = v1 (r / plate_radius)^n, |n| << 1."""

    v1: float
    n: float
    plate_radius: float

    def __post_init__(self) -> None:
        if self.plate_radius <= 0.0:
            raise DomainError("plate_radius must be > 0")


def effective_potential_from_surface_model(surface: SurfaceModel,
                                           geometry: PlateGeometry,
                                           d: float) -> float:
    """Capacitance-gradient-weighted average of the surface potential.

    Averages v1 (r/plate_radius)^n over the sphere's facing hemisphere with
    the local parallel-plate pressure weight 1/g(r,d)^2, where g is the local
    gap.  Demonstrates that a weak radial gradient produces a near-logarithmic
    minimizing-voltage curve.
    """
    if geometry.kind is not GeometryKind.SPHERE_PLATE:
        raise DomainError("surface-model averaging is defined for sphere-plate geometry")
    if d <= 0.0:
        raise DomainError("separation d must be > 0")
    if surface.v1 == 0.0:
        return 0.0
    radius = geometry.sphere_radius
    g0 = effective_gap(d, geometry)
    scale = (radius / surface.plate_radius) ** surface.n

    # r = R sin(theta) keeps both integrands smooth at r = R
    def gap(theta: float) -> float:
        return g0 + radius * (1.0 - math.cos(theta))

    def weighted(theta: float) -> float:
        s = math.sin(theta)
        return (s ** surface.n) * s * math.cos(theta) / gap(theta) ** 2

    def weight(theta: float) -> float:
        return math.sin(theta) * math.cos(theta) / gap(theta) ** 2

    num, err_num = quad(weighted, 0.0, math.pi / 2.0, epsabs=0.0, epsrel=1e-12, limit=200)
    den, err_den = quad(weight, 0.0, math.pi / 2.0, epsabs=0.0, epsrel=1e-12, limit=200)
    if den <= 0.0 or err_den > 1e-8 * den or err_num > 1e-8 * abs(num) + 1e-300:
        raise NumericError(f"surface-model quadrature did not converge at d={d:g} m")
    return surface.v1 * scale * num / den
