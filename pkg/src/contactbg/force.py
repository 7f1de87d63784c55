"""Electrostatic energy, force, residual background and its subtraction.

All forces follow the energy-gradient convention F = dE/dd with
E = C(d)(V_a + V_c)^2 / 2.  Under that convention the residual background
at the minimizing voltage, F = -C'(d) u^2 / 2 with u = V_a + V_c, comes out
positive (C' < 0).  Curves carry the convention label explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, NumericError, RangeError
from .profiles import VaProfile, evaluate_va
from .solver import VcSolution

IDENTITY_RTOL = 1e-8  # agreement between the two background-force evaluations


class SignConvention(Enum):
    ENERGY_GRADIENT = "energy_gradient"


class Provenance(Enum):
    MEASURED = "measured"
    COMPUTED_BACKGROUND = "computed_background"
    CORRECTED = "corrected"


@dataclass(frozen=True)
class ForceCurve:
    """Sampled force-vs-separation data with an explicit sign convention."""

    d: np.ndarray
    f: np.ndarray
    provenance: Provenance
    sign_convention: SignConvention = SignConvention.ENERGY_GRADIENT
    background_fraction: np.ndarray | None = None

    def __post_init__(self) -> None:
        d = np.asarray(self.d, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if d.ndim != 1 or d.shape != f.shape:
            raise DomainError("d and f must be 1-d arrays of equal length")
        if np.any(d <= 0.0):
            raise DomainError("all separations must be > 0")
        if np.any(np.diff(d) <= 0.0):
            raise DomainError("separations must be strictly increasing")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "f", f)


def electrostatic_energy(model, va: float, vc: float, d: float) -> float:
    """Field energy C(d) (va + vc)^2 / 2 in joules."""
    return 0.5 * model.capacitance(d) * (va + vc) ** 2


def electrostatic_force_general(model, va: float, solution: VcSolution, d: float) -> float:
    """Force dE/dd at a fixed externally applied voltage va.

    Evaluates C'(va + V_c)^2 / 2 + C (va + V_c) V_c' at a grid point of the
    solution, including the contact-potential-gradient term.  Exactly
    quadratic in va; its stationary point is the minimizing voltage.
    """
    i = solution.index_of(d)
    u = va + solution.vc[i]
    c = model.capacitance(d)
    cp = model.derivative(d)
    return 0.5 * cp * u * u + c * u * solution.vc_prime[i]


def minimized_background_force(profile: VaProfile, model, solution: VcSolution,
                               d: float) -> float:
    """Residual electrostatic force at the minimizing voltage.

    Computes the direct energy-gradient sum C' u^2 / 2 + C u V_c' (V_a held
    constant) and the equivalent -C' u^2 / 2 that follows from the
    minimization condition; both must agree to IDENTITY_RTOL, otherwise the
    solution is corrupt and :class:`NumericError` is raised.
    """
    i = solution.index_of(d)
    va = evaluate_va(profile, d)
    u = va + solution.vc[i]
    c = model.capacitance(d)
    cp = model.derivative(d)
    direct = 0.5 * cp * u * u + c * u * solution.vc_prime[i]
    identity = -0.5 * cp * u * u
    scale = max(abs(direct), abs(identity), 0.5 * abs(cp) * va * va)
    if abs(direct - identity) > IDENTITY_RTOL * scale:
        raise NumericError(
            f"background-force identity broken at d={d:g} m "
            f"(direct={direct:g} N, from-minimization={identity:g} N); "
            "the V_c solution is inconsistent with this profile")
    return direct


def background_curve(profile: VaProfile, model, solution: VcSolution) -> ForceCurve:
    """Background force evaluated on every grid point of the solution."""
    f = np.array([minimized_background_force(profile, model, solution, d)
                  for d in solution.d])
    return ForceCurve(solution.d.copy(), f, Provenance.COMPUTED_BACKGROUND)


def background_identity_gap(profile: VaProfile, model, solution: VcSolution) -> float:
    """Worst relative disagreement of the two background-force evaluations.

    Compares the direct energy-gradient sum against -C' u^2 / 2 over the
    whole grid; zero-force points where both sides vanish contribute zero.
    """
    worst = 0.0
    for i, d in enumerate(solution.d):
        u = evaluate_va(profile, d) + solution.vc[i]
        c = model.capacitance(d)
        cp = model.derivative(d)
        direct = 0.5 * cp * u * u + c * u * solution.vc_prime[i]
        identity = -0.5 * cp * u * u
        scale = max(abs(direct), abs(identity))
        if scale == 0.0:
            continue
        worst = max(worst, abs(direct - identity) / scale)
    return worst


def _interp_background(background: ForceCurve, d_target: np.ndarray) -> np.ndarray:
    if d_target[0] < background.d[0] * (1.0 - 1e-12) or \
            d_target[-1] > background.d[-1] * (1.0 + 1e-12):
        raise RangeError(
            f"measured grid [{d_target[0]:g}, {d_target[-1]:g}] m exceeds the background "
            f"grid [{background.d[0]:g}, {background.d[-1]:g}] m")
    x = np.log(background.d)
    xt = np.clip(np.log(d_target), x[0], x[-1])
    if np.all(background.f > 0.0) or np.all(background.f < 0.0):
        sign = 1.0 if background.f[0] > 0.0 else -1.0
        interp = PchipInterpolator(x, np.log(np.abs(background.f)))
        return sign * np.exp(interp(xt))
    return np.interp(xt, x, background.f)


def correct_measured_force(measured: ForceCurve, background: ForceCurve,
                           interpolate: bool = False) -> ForceCurve:
    """Pointwise measured - background, with per-point background fraction.

    The grids must match unless ``interpolate`` is set, in which case the
    background is carried onto the measured grid by a monotone cubic in
    (ln d, ln |F|) when the background has uniform sign, linearly in
    (ln d, F) otherwise.
    """
    same_grid = measured.d.size == background.d.size and np.allclose(
        measured.d, background.d, rtol=1e-12, atol=0.0)
    if same_grid:
        bg = background.f
    elif interpolate:
        bg = _interp_background(background, measured.d)
    else:
        raise RangeError("measured and background grids differ; pass interpolate=True "
                         "to resample the background")
    with np.errstate(divide="ignore", invalid="ignore"):
        fraction = np.where(measured.f != 0.0, np.abs(bg) / np.abs(measured.f), np.inf)
        fraction = np.where((measured.f == 0.0) & (bg == 0.0), 0.0, fraction)
    return ForceCurve(measured.d.copy(), measured.f - bg, Provenance.CORRECTED,
                      measured.sign_convention, fraction)
