"""Reconstruction of the distance-dependent contact potential V_c(d).

At each separation the force-minimizing applied voltage V_a satisfies

    C'(d) (V_a + V_c) + C(d) V_c' = 0,

so V_c obeys dV_c/dd = -(C'/C)(V_a + V_c) with V_c = -V_a at large
separation.  The integration runs in s = ln d with a classic fixed-step
RK4 scheme from the boundary separation d_max down to the smallest grid
point; requested grid values come from cubic-Hermite dense output on the
integration nodes.

The solver accepts any capacitance-like object exposing ``capacitance(d)``,
``derivative(d)`` (both vectorizable) and a ``domain`` attribute, so the
dimensionless toy model in :mod:`contactbg.analysis` integrates through the
same code path as the physical geometries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, RangeError
from .profiles import Extrapolation, TabulatedVa, VaProfile, evaluate_va

DEFAULT_STEP = 1e-3         # Delta s in ln d
BOUNDARY_RULE_FACTOR = 100.0  # d_max should reach 100x the closest approach
RESIDUAL_RTOL = 1e-6        # acceptance tolerance for the minimization residual


@dataclass(frozen=True)
class IntegratorStats:
    steps: int
    max_local_error: float  # volts, per-step step-doubling estimate


@dataclass(frozen=True)
class VcSolution:
    """Gridded contact-potential reconstruction.

    ``d``/``vc`` hold the requested grid; ``vc_prime`` is dV_c/dd there,
    evaluated from the ODE right-hand side at solve time (not by
    re-differencing the grid).  ``vc(d_max) = -V_a(d_max)`` holds exactly.
    """

    d: np.ndarray
    vc: np.ndarray
    vc_prime: np.ndarray
    d_max: float
    stats: IntegratorStats
    warnings: tuple[str, ...] = ()

    def index_of(self, d: float) -> int:
        """Index of the grid point equal to d (to 1 part in 1e12)."""
        i = int(np.searchsorted(self.d, d))
        for j in (i - 1, i):
            if 0 <= j < self.d.size and math.isclose(self.d[j], d, rel_tol=1e-12):
                return j
        raise RangeError(f"separation {d:g} m is not a grid point of this solution")

    @property
    def grid(self) -> list[tuple[float, float]]:
        return list(zip(self.d.tolist(), self.vc.tolist()))


def _hermite(s, s_hi, s_lo, y_hi, y_lo, f_hi, f_lo):
    """Cubic Hermite value on [s_lo, s_hi] (descending integration order).

    Written as a correction to y_hi so constant solutions are reproduced
    exactly regardless of rounding in the blend weights.
    """
    dt = s_lo - s_hi
    t = (s - s_hi) / dt
    return (y_hi + t * t * (3.0 - 2.0 * t) * (y_lo - y_hi)
            + dt * t * (1.0 - t) * ((1.0 - t) * f_hi - t * f_lo))


def solve_vc(profile: VaProfile, model, d_grid, d_max: float,
             step: float = DEFAULT_STEP) -> VcSolution:
    """Integrate the contact-potential ODE down from d_max onto d_grid.

    Parameters
    ----------
    profile : VaProfile
        Minimizing-voltage curve; must be evaluable on [min(d_grid), d_max].
    model : capacitance-like
        Object with ``capacitance(d)``, ``derivative(d)`` and ``domain``.
    d_grid : array-like
        Strictly increasing output separations in m, inside the model domain.
    d_max : float
        Boundary-condition separation where V_c = -V_a is imposed.
    step : float
        RK4 step in s = ln d; the span is subdivided uniformly with a step
        no larger than this.

    Returns
    -------
    VcSolution
        With a warning flag when d_max falls short of 100x the closest
        approach.
    """
    d_arr = np.asarray(d_grid, dtype=float)
    if d_arr.ndim != 1 or d_arr.size == 0:
        raise DomainError("d_grid must be a non-empty 1-d array")
    if np.any(d_arr <= 0.0):
        raise DomainError("grid separations must be > 0")
    if np.any(np.diff(d_arr) <= 0.0):
        raise DomainError("d_grid must be strictly increasing")
    if step <= 0.0:
        raise DomainError("integration step must be > 0")
    if d_max < d_arr[-1]:
        raise DomainError(f"d_max={d_max:g} m must be >= max(d_grid)={d_arr[-1]:g} m")
    lo, hi = model.domain
    if d_arr[0] < lo or max(d_max, d_arr[-1]) > hi:
        raise RangeError(
            f"solve range [{d_arr[0]:g}, {d_max:g}] m exceeds the capacitance model "
            f"domain [{lo:g}, {hi:g}] m")

    warnings: list[str] = []
    if isinstance(profile, TabulatedVa) and d_max > profile.d[-1] * (1.0 + 1e-12):
        if profile.extrapolation is Extrapolation.FORBID:
            raise RangeError(
                f"boundary condition at d_max={d_max:g} m requires large-separation data "
                f"(samples stop at {profile.d[-1]:g} m) or log-fit extrapolation")
        warnings.append(
            f"V_a samples stop at {profile.d[-1]:.6g} m; boundary value at "
            f"d_max={d_max:.6g} m uses log-fit extrapolation over the outermost decade")
    if isinstance(profile, TabulatedVa) and d_arr[0] < profile.d[0] * (1.0 - 1e-12) \
            and profile.extrapolation is not Extrapolation.FORBID:
        warnings.append(
            f"grid extends below the first V_a sample ({profile.d[0]:.6g} m); "
            "short-separation values use log-fit extrapolation")
    if d_max < BOUNDARY_RULE_FACTOR * d_arr[0]:
        warnings.append(
            f"d_max={d_max:.6g} m is below {BOUNDARY_RULE_FACTOR:g}x the closest approach "
            f"({BOUNDARY_RULE_FACTOR * d_arr[0]:.6g} m); boundary condition may be premature")

    s_max = math.log(d_max)
    s_min = math.log(d_arr[0])
    vc0 = -evaluate_va(profile, d_max)
    span = s_max - s_min

    if span == 0.0:
        vc = np.full(d_arr.shape, vc0)
        vcp = _rhs_on_grid(profile, model, d_arr, vc)
        return VcSolution(d_arr, vc, vcp, d_max, IntegratorStats(0, 0.0), tuple(warnings))

    n_steps = max(1, math.ceil(span / step))
    h = span / n_steps

    # all RK4 stage abscissae lie on a quarter-step grid; evaluating the
    # profile and capacitance model on it once keeps the stepping loop in
    # plain float arithmetic (the half-step passes feed the error estimate)
    s_quarter = s_max - np.arange(4 * n_steps + 1) * (h / 4.0)
    s_quarter[-1] = s_min
    d_quarter = np.exp(s_quarter)
    d_quarter[0] = d_max
    d_quarter[-1] = d_arr[0]
    va_q = np.asarray(evaluate_va(profile, d_quarter), dtype=float)
    beta_q = -d_quarter * (np.asarray(model.derivative(d_quarter), dtype=float)
                           / np.asarray(model.capacitance(d_quarter), dtype=float))
    if np.any(~np.isfinite(beta_q)) or np.any(~np.isfinite(va_q)):
        raise NumericError("non-finite capacitance ratio or V_a inside the solve range")

    y = float(vc0)
    hs = -h
    y_nodes = np.empty(n_steps + 1)
    f_nodes = np.empty(n_steps + 1)
    y_nodes[0] = y
    max_err = 0.0
    for k in range(n_steps):
        j = 4 * k
        b0, b1, b2, b3, b4 = beta_q[j], beta_q[j + 1], beta_q[j + 2], beta_q[j + 3], beta_q[j + 4]
        v0, v1, v2, v3, v4 = va_q[j], va_q[j + 1], va_q[j + 2], va_q[j + 3], va_q[j + 4]

        k1 = b0 * (v0 + y)
        f_nodes[k] = k1
        k2 = b2 * (v2 + y + 0.5 * hs * k1)
        k3 = b2 * (v2 + y + 0.5 * hs * k2)
        k4 = b4 * (v4 + y + hs * k3)
        y_full = y + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        # two half steps, reusing k1, for the step-doubling error estimate
        hh = 0.5 * hs
        q2 = b1 * (v1 + y + 0.5 * hh * k1)
        q3 = b1 * (v1 + y + 0.5 * hh * q2)
        q4 = b2 * (v2 + y + hh * q3)
        y_half = y + (hh / 6.0) * (k1 + 2.0 * q2 + 2.0 * q3 + q4)
        r1 = b2 * (v2 + y_half)
        r2 = b3 * (v3 + y_half + 0.5 * hh * r1)
        r3 = b3 * (v3 + y_half + 0.5 * hh * r2)
        r4 = b4 * (v4 + y_half + hh * r3)
        y_two = y_half + (hh / 6.0) * (r1 + 2.0 * r2 + 2.0 * r3 + r4)

        err = abs(y_two - y_full) / 15.0
        if err > max_err:
            max_err = err
        y = y_full
        y_nodes[k + 1] = y
    f_nodes[n_steps] = beta_q[4 * n_steps] * (va_q[4 * n_steps] + y)

    s_nodes = s_max - np.arange(n_steps + 1) * h
    s_nodes[-1] = s_min

    # dense output onto the requested grid
    s_query = np.log(d_arr)
    vc = np.empty(d_arr.shape)
    for m, sq in enumerate(s_query):
        if sq >= s_max:
            vc[m] = y_nodes[0]
            continue
        if sq <= s_min:
            vc[m] = y_nodes[-1]
            continue
        i = int(np.clip(math.floor((s_max - sq) / h), 0, n_steps - 1))
        vc[m] = _hermite(sq, s_nodes[i], s_nodes[i + 1],
                         y_nodes[i], y_nodes[i + 1], f_nodes[i], f_nodes[i + 1])

    vcp = _rhs_on_grid(profile, model, d_arr, vc)
    stats = IntegratorStats(n_steps, max_err)
    return VcSolution(d_arr, vc, vcp, d_max, stats, tuple(warnings))


def _rhs_on_grid(profile: VaProfile, model, d_arr: np.ndarray, vc: np.ndarray) -> np.ndarray:
    """dV_c/dd = -(C'/C)(V_a + V_c) evaluated on the output grid."""
    va = np.asarray(evaluate_va(profile, d_arr), dtype=float)
    c = np.asarray(model.capacitance(d_arr), dtype=float)
    cp = np.asarray(model.derivative(d_arr), dtype=float)
    return -(cp / c) * (va + vc)


def minimization_residual(solution: VcSolution, profile: VaProfile, model,
                          d: float) -> float:
    """Residual of the force-minimization condition at a grid point.

    Returns C'(d)(V_a + V_c) + C(d) V_c' using the solution's stored values;
    near zero for a valid solution, and a sensitive corruption detector since
    V_c' was recorded at solve time.
    """
    i = solution.index_of(d)
    va = evaluate_va(profile, d)
    c = model.capacitance(d)
    cp = model.derivative(d)
    return cp * (va + solution.vc[i]) + c * solution.vc_prime[i]


def residual_scale(profile: VaProfile, model, d: float) -> float:
    """|C'(d) V_a(d)|, the natural scale for the minimization residual."""
    return abs(model.derivative(d) * evaluate_va(profile, d))
