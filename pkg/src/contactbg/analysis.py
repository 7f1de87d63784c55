"""Power-law diagnostics, the dimensionless log toy model, offset invariance.

The toy model takes V_a = ln d and C = -ln d on d < 1 (dimensionless).  Its
compensated potential and residual background force have the closed forms

    u(d) = ln(d)/2 - ln(D)^2 / (2 ln d),      F(d) = u^2 / (2 d),

with boundary u(D) = 0; deep inside (|ln d| >> |ln D|) the force goes to
(ln d)^2 / (8 d), whose local log-log slope 2/ln(d) - 1 sits near -1.25.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, InsufficientDataError, MixedSignError, RangeError
from .force import ForceCurve, background_curve
from .profiles import VaProfile
from .solver import solve_vc


@dataclass(frozen=True)
class PowerLawFit:
    """Result of a log-log least-squares fit F ~ amplitude / d^m."""

    m: float
    amplitude: float        # N * m^m, fitted on |F|
    fit_range: tuple[float, float]
    rms_log_residual: float


def fit_power_law(curve: ForceCurve, fit_range: tuple[float, float]) -> PowerLawFit:
    """Unweighted least squares of ln|F| against ln d over the given range.

    Requires at least 5 samples inside the range, all of one sign.
    """
    d_lo, d_hi = fit_range
    if not (0.0 < d_lo < d_hi):
        raise DomainError(f"invalid fit range [{d_lo:g}, {d_hi:g}]")
    mask = (curve.d >= d_lo) & (curve.d <= d_hi)
    d = curve.d[mask]
    f = curve.f[mask]
    if d.size < 5:
        raise InsufficientDataError(
            f"power-law fit needs >= 5 samples in range, got {d.size}")
    if np.any(f > 0.0) and np.any(f <= 0.0):
        raise MixedSignError("force samples in the fit range change sign (or vanish)")
    if np.all(f == 0.0):
        raise MixedSignError("force samples in the fit range are identically zero")
    slope, intercept = np.polyfit(np.log(d), np.log(np.abs(f)), 1)
    res = np.log(np.abs(f)) - (slope * np.log(d) + intercept)
    return PowerLawFit(m=float(-slope), amplitude=float(np.exp(intercept)),
                       fit_range=(float(d_lo), float(d_hi)),
                       rms_log_residual=float(np.sqrt(np.mean(res**2))))


def local_loglog_slope(curve: ForceCurve, d: float) -> float:
    """d ln|F| / d ln d at d, by centered differencing of the local interpolant.

    Uses the five samples nearest d (which must carry one sign) to build a
    monotone cubic in (ln d, ln|F|), then applies a five-point central
    difference with a step of a quarter of the local sample spacing.
    """
    if not (curve.d[0] < d < curve.d[-1]):
        raise RangeError(f"d={d:g} m is not strictly inside the sampled range")
    i = int(np.argmin(np.abs(curve.d - d)))
    lo, hi = i - 2, i + 2
    if lo < 0 or hi >= curve.d.size:
        raise RangeError("five-point stencil exits the sampled range")
    f_win = curve.f[lo:hi + 1]
    if not (np.all(f_win > 0.0) or np.all(f_win < 0.0)):
        raise MixedSignError("force changes sign (or vanishes) inside the stencil")
    x_win = np.log(curve.d[lo:hi + 1])
    interp = PchipInterpolator(x_win, np.log(np.abs(f_win)))
    x0 = math.log(d)
    h = 0.25 * np.min(np.diff(x_win))
    pts = interp(x0 + h * np.array([-2.0, -1.0, 1.0, 2.0]))
    return float((pts[0] - 8.0 * pts[1] + 8.0 * pts[2] - pts[3]) / (12.0 * h))


class LogToyCapacitance:
    """Dimensionless toy capacitance C(d) = -ln d on 0 < d < 1."""

    domain = (1e-300, 1.0 - 1e-12)

    @staticmethod
    def capacitance(d):
        d_arr = np.asarray(d, dtype=float)
        if np.any(d_arr <= 0.0) or np.any(d_arr >= 1.0):
            raise DomainError("toy capacitance requires 0 < d < 1")
        out = -np.log(d_arr)
        return float(out) if np.ndim(d) == 0 else out

    @staticmethod
    def derivative(d):
        d_arr = np.asarray(d, dtype=float)
        if np.any(d_arr <= 0.0) or np.any(d_arr >= 1.0):
            raise DomainError("toy capacitance requires 0 < d < 1")
        out = -1.0 / d_arr
        return float(out) if np.ndim(d) == 0 else out


def analytic_log_model(d_grid, boundary: float):
    """Closed-form (u, F) of the toy model with boundary u(boundary) = 0.

    Parameters
    ----------
    d_grid : array-like
        Dimensionless separations, 0 < d <= boundary < 1.
    boundary : float
        Boundary separation D.

    Returns
    -------
    (u, force) : tuple of ndarray
        u = ln(d)/2 - ln(D)^2/(2 ln d) and F = -C' u^2 / 2 = u^2 / (2d).
    """
    d = np.asarray(d_grid, dtype=float)
    if np.any(d <= 0.0) or np.any(d >= 1.0):
        raise DomainError("toy model requires 0 < d < 1 (the log changes sign at 1)")
    if not (0.0 < boundary < 1.0):
        raise DomainError("boundary D must satisfy 0 < D < 1")
    if np.any(d > boundary):
        raise DomainError("toy model requires d <= boundary D")
    s = np.log(d)
    cap_s = math.log(boundary)
    u = 0.5 * s - cap_s * cap_s / (2.0 * s)
    force = u * u / (2.0 * d)
    return u, force


def offset_invariance_check(profile: VaProfile, model, v0: float, d_grid,
                            d_max: float | None = None, step: float = 1e-3) -> float:
    """Max relative change of the background force under V_a -> V_a - v0.

    Solves the pipeline twice (original profile, shifted profile) on the same
    grid and returns max |F_shifted - F| / |F|; exactly zero where both
    vanish.  The ODE depends on V_a only through u, so the deviation is
    numerical noise.
    """
    d_arr = np.asarray(d_grid, dtype=float)
    if d_max is None:
        d_max = 100.0 * float(d_arr.min())
    base = solve_vc(profile, model, d_arr, d_max, step)
    shifted = solve_vc(profile.shifted(-v0), model, d_arr, d_max, step)
    f_base = background_curve(profile, model, base).f
    f_shift = background_curve(profile.shifted(-v0), model, shifted).f
    diff = np.abs(f_shift - f_base)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(f_base != 0.0, diff / np.abs(f_base), np.where(diff == 0.0, 0.0, np.inf))
    return float(np.max(rel))
