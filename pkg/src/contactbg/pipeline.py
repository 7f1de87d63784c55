"""Pipeline configuration and orchestration: data in, corrected curves out.

``run_pipeline`` chains the log fit, the contact-potential reconstruction,
the background-force evaluation and (optionally) the measured-curve
correction, then writes CSV results plus a ``report.txt``.  Outputs are
deterministic: identical inputs produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import PowerLawFit, fit_power_law
from .capacitance import CapacitanceModel, DerivativeMode, GeometryKind, PlateGeometry
from .dataio import FLOAT_FORMAT, write_csv
from .errors import ConfigError, ContactBgError, DataError, InsufficientDataError, MixedSignError
from .force import ForceCurve, Provenance, background_curve, correct_measured_force
from .profiles import Extrapolation, LogFit, TabulatedVa, evaluate_va, fit_log_profile
from .solver import (
    BOUNDARY_RULE_FACTOR,
    VcSolution,
    minimization_residual,
    residual_scale,
    solve_vc,
)


@dataclass(frozen=True)
class PipelineConfig:
    """Flat configuration for a pipeline run (see ``parse_config``)."""

    geometry: PlateGeometry
    d0_reference: float = 1e-6
    dmax_multiplier: float = 100.0
    integrator_step: float = 1e-3
    extrapolation: Extrapolation = Extrapolation.LOG_FIT
    output_dir: Path = Path("out")
    derivative_mode: DerivativeMode = DerivativeMode.ANALYTIC

    def __post_init__(self) -> None:
        if self.dmax_multiplier < 1.0:
            raise ConfigError("dmax_multiplier must be >= 1")
        if not (0.0 < self.integrator_step <= 0.1):
            raise ConfigError("integrator_step must lie in (0, 0.1]")
        if self.d0_reference <= 0.0:
            raise ConfigError("d0_reference must be > 0")


_CONFIG_KEYS = {
    "kind", "plate_area", "sphere_radius", "debye_length", "relative_permittivity",
    "screened_surfaces", "d0_reference", "dmax_multiplier", "integrator_step",
    "extrapolation", "output_dir", "derivative_mode",
}


def parse_config(path) -> PipelineConfig:
    """Parse a ``key = value`` config file with ``#`` comments."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}: line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}: line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}: line {lineno}: duplicate key {key!r}")
        values[key] = value
    return build_config(values, base_dir=path.parent)


def _as_float(values: dict[str, str], key: str, default: float) -> float:
    if key not in values:
        return default
    try:
        return float(values[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: cannot parse {values[key]!r} as a number") from exc


def build_config(values: dict[str, str], base_dir: Path | None = None) -> PipelineConfig:
    if "kind" not in values:
        raise ConfigError("config must set 'kind' (parallel_plate or sphere_plate)")
    try:
        kind = GeometryKind(values["kind"])
    except ValueError as exc:
        raise ConfigError(f"unknown geometry kind {values['kind']!r}") from exc
    screened = _as_float(values, "screened_surfaces", 2)
    if screened != int(screened):
        raise ConfigError("screened_surfaces must be an integer")
    try:
        geometry = PlateGeometry(
            kind=kind,
            plate_area=_as_float(values, "plate_area", 0.0),
            sphere_radius=_as_float(values, "sphere_radius", 0.0),
            debye_length=_as_float(values, "debye_length", 0.0),
            relative_permittivity=_as_float(values, "relative_permittivity", 1.0),
            screened_surfaces=int(screened),
        )
    except ContactBgError as exc:
        raise ConfigError(f"invalid geometry: {exc}") from exc
    extrap_raw = values.get("extrapolation", "log_fit")
    try:
        extrapolation = Extrapolation(extrap_raw)
    except ValueError as exc:
        raise ConfigError(f"unknown extrapolation {extrap_raw!r}") from exc
    mode_raw = values.get("derivative_mode", "analytic")
    try:
        derivative_mode = DerivativeMode(mode_raw)
    except ValueError as exc:
        raise ConfigError(f"unknown derivative_mode {mode_raw!r}") from exc
    out_raw = values.get("output_dir", "out")
    output_dir = Path(out_raw)
    if base_dir is not None and not output_dir.is_absolute():
        output_dir = base_dir / output_dir
    return PipelineConfig(
        geometry=geometry,
        d0_reference=_as_float(values, "d0_reference", 1e-6),
        dmax_multiplier=_as_float(values, "dmax_multiplier", 100.0),
        integrator_step=_as_float(values, "integrator_step", 1e-3),
        extrapolation=extrapolation,
        output_dir=output_dir,
        derivative_mode=derivative_mode,
    )


@dataclass(frozen=True)
class PipelineResult:
    log_fit: LogFit
    profile: TabulatedVa
    solution: VcSolution
    background: ForceCurve
    corrected: ForceCurve | None
    power_law: PowerLawFit | None
    power_law_note: str
    max_residual_rel: float
    warnings: tuple[str, ...]
    report_text: str
    written: dict[str, Path] = field(default_factory=dict)


def _choose_dmax(config: PipelineConfig, va_top: float, grid: np.ndarray) -> float:
    """Boundary separation: all available large-separation data, never less
    than the multiplier rule when extrapolation can reach it."""
    target = config.dmax_multiplier * float(grid[0])
    if va_top >= target:
        candidate = va_top
    elif config.extrapolation is Extrapolation.LOG_FIT:
        candidate = target
    else:
        candidate = va_top
    return max(candidate, float(grid[-1]))


def run_pipeline(config: PipelineConfig, va_data: np.ndarray,
                 force: ForceCurve | None = None,
                 write: bool = True) -> PipelineResult:
    """Execute fit -> solve -> background -> (optional) correction.

    Parameters
    ----------
    config : PipelineConfig
    va_data : (n, 2) array
        Minimizing-voltage samples (d in m, V_a in V), sorted by d.
    force : ForceCurve, optional
        Measured curve to correct; when given it also defines the output
        grid, otherwise the V_a grid is used.
    write : bool
        Write result CSVs and report.txt into ``config.output_dir``.
    """
    va_data = np.asarray(va_data, dtype=float)
    if va_data.ndim != 2 or va_data.shape[1] != 2:
        raise DataError("va_data must be an (n, 2) array of (d, V_a)")

    log_fit = fit_log_profile(va_data, config.d0_reference)
    profile = TabulatedVa(va_data[:, 0], va_data[:, 1], config.extrapolation)
    grid = force.d if force is not None else va_data[:, 0]

    d_max = _choose_dmax(config, float(va_data[-1, 0]), grid)
    domain = (min(grid[0], va_data[0, 0]) / 100.0, d_max * 100.0)
    model = CapacitanceModel(config.geometry, config.derivative_mode, domain)

    solution = solve_vc(profile, model, grid, d_max, config.integrator_step)
    warnings = list(solution.warnings)
    background = background_curve(profile, model, solution)

    power_law: PowerLawFit | None = None
    nonzero = background.f != 0.0
    if not np.any(nonzero):
        note = "background is identically zero; power-law fit not applicable"
    else:
        # exact zeros only occur where the boundary condition pins u = 0;
        # they carry no slope information and cannot enter a log fit
        fit_curve = background if np.all(nonzero) else ForceCurve(
            background.d[nonzero], background.f[nonzero], Provenance.COMPUTED_BACKGROUND)
        try:
            power_law = fit_power_law(
                fit_curve, (float(fit_curve.d[0]), float(fit_curve.d[-1])))
            note = "" if np.all(nonzero) else \
                f"{int(np.count_nonzero(~nonzero))} zero background sample(s) excluded from the power-law fit"
        except (MixedSignError, InsufficientDataError) as exc:
            note = f"power-law fit not applicable: {exc}"

    residual_rels = []
    for d in solution.d:
        scale = residual_scale(profile, model, d)
        res = abs(minimization_residual(solution, profile, model, d))
        residual_rels.append(res / scale if scale > 0.0 else res)
    max_residual_rel = float(np.max(residual_rels))

    corrected = None
    if force is not None:
        corrected = correct_measured_force(force, background)

    report = _render_report(config, log_fit, solution, background, corrected,
                            power_law, note, max_residual_rel, warnings)

    result = PipelineResult(log_fit, profile, solution, background, corrected,
                            power_law, note, max_residual_rel, tuple(warnings),
                            report, {})
    if write:
        write_outputs(result, Path(config.output_dir))
    return result


def write_outputs(result: PipelineResult, out_dir: Path,
                  artifacts: tuple[str, ...] = ("vc", "background", "corrected", "report")) -> None:
    """Write the selected result files into ``out_dir`` (created if needed)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    solution = result.solution
    if "vc" in artifacts:
        u = np.asarray(evaluate_va(result.profile, solution.d)) + solution.vc
        write_csv(out / "vc_solution.csv", ["d_m", "vc_V", "u_V"],
                  [solution.d, solution.vc, u])
        result.written["vc_solution"] = out / "vc_solution.csv"
    if "background" in artifacts:
        write_csv(out / "background_force.csv", ["d_m", "F_N"],
                  [result.background.d, result.background.f])
        result.written["background_force"] = out / "background_force.csv"
    if "corrected" in artifacts and result.corrected is not None:
        write_csv(out / "corrected_force.csv", ["d_m", "F_N"],
                  [result.corrected.d, result.corrected.f])
        result.written["corrected_force"] = out / "corrected_force.csv"
    if "report" in artifacts:
        (out / "report.txt").write_text(result.report_text, encoding="utf-8", newline="\n")
        result.written["report"] = out / "report.txt"


def _fmt(x: float) -> str:
    return FLOAT_FORMAT.format(x)


def _render_report(config, log_fit, solution, background, corrected,
                   power_law, note, max_residual_rel, warnings) -> str:
    g = config.geometry
    lines = ["contactbg pipeline report", "========================="]
    if g.kind is GeometryKind.PARALLEL_PLATE:
        lines.append(f"geometry: parallel_plate, area = {_fmt(g.plate_area)} m^2")
    else:
        lines.append(f"geometry: sphere_plate, radius = {_fmt(g.sphere_radius)} m")
    lines.append(
        f"debye correction: lambda = {_fmt(g.debye_length)} m, epsilon = "
        f"{_fmt(g.relative_permittivity)}, screened surfaces = {g.screened_surfaces}")
    lines.append(f"derivative mode: {config.derivative_mode.value}")
    lines.append("")
    lines.append(
        f"V_a log fit (d0 = {_fmt(config.d0_reference)} m): "
        f"a = {_fmt(log_fit.a)} V, b = {_fmt(log_fit.b)} V, "
        f"rms residual = {_fmt(log_fit.rms_residual)} V")
    lines.append(
        f"grid: {solution.d.size} points, {_fmt(solution.d[0])} .. {_fmt(solution.d[-1])} m")
    lines.append(
        f"boundary: d_max = {_fmt(solution.d_max)} m "
        f"({BOUNDARY_RULE_FACTOR:g}x rule target = {_fmt(BOUNDARY_RULE_FACTOR * solution.d[0])} m)")
    lines.append(
        f"integrator: {solution.stats.steps} steps, "
        f"max local error estimate = {_fmt(solution.stats.max_local_error)} V")
    lines.append(
        f"minimization residual: max |C'(Va+Vc) + C Vc'| / |C' Va| = {_fmt(max_residual_rel)}")
    absf = np.abs(background.f)
    lines.append(
        "background force (energy-gradient convention): attractive magnitude "
        f"|F| in [{_fmt(absf.min())}, {_fmt(absf.max())}] N")
    if power_law is not None:
        lines.append(
            f"background power law over the data range: m = {_fmt(power_law.m)}, "
            f"amplitude = {_fmt(power_law.amplitude)} N m^m, "
            f"rms log residual = {_fmt(power_law.rms_log_residual)}")
    if note:
        lines.append(note)
    if corrected is not None:
        frac = corrected.background_fraction
        lines.append(
            f"corrected curve: {corrected.d.size} points, "
            f"max |background/measured| = {_fmt(float(np.max(frac)))}")
    for w in warnings:
        lines.append(f"WARN: {w}")
    return "\n".join(lines) + "\n"
