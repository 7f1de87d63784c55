"""Command-line interface.

Subcommands: fit-va, solve-vc, background, correct, verify,
demo-surface-model.  Exit codes: 0 success, 2 parse/config error,
3 numeric/domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .capacitance import GeometryKind
from .dataio import FLOAT_FORMAT, load_force_measurements, load_va_measurements, write_csv
from .errors import (
    ConfigError,
    ContactBgError,
    DataError,
    DomainError,
    NumericError,
    RangeError,
)
from .pipeline import parse_config, run_pipeline, write_outputs
from .profiles import SurfaceModel, effective_potential_from_surface_model, fit_log_profile
from .verify import run_verification

EXIT_OK = 0
EXIT_DATA = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactbg",
        description="Reconstruct distance-dependent contact potentials and subtract "
                    "the residual electrostatic background from force curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True, va_required=True):
        p.add_argument("--config", required=config_required, help="pipeline config file")
        p.add_argument("--va", required=va_required, help="CSV of minimizing voltages (d_m,va_V)")
        p.add_argument("--out", help="output directory (overrides config output_dir)")

    p = sub.add_parser("fit-va", help="fit V_a = a ln(d/d0) + b to measured data")
    add_common(p, config_required=False)

    p = sub.add_parser("solve-vc", help="reconstruct the contact potential V_c(d)")
    add_common(p)

    p = sub.add_parser("background", help="compute the residual electrostatic background force")
    add_common(p)

    p = sub.add_parser("correct", help="subtract the background from a measured force curve")
    add_common(p)
    p.add_argument("--force", required=True, help="CSV of measured forces (d_m,F_N)")

    p = sub.add_parser("verify", help="run the built-in analytic checks")
    p.add_argument("--step", type=float, default=1e-3,
                   help="integrator step in ln d for the checks (default 1e-3)")

    p = sub.add_parser("demo-surface-model",
                       help="show that a weak radial surface gradient yields a log-form V_a")
    p.add_argument("--config", required=True, help="pipeline config (sphere_plate geometry)")
    p.add_argument("--out", help="output directory (overrides config output_dir)")
    p.add_argument("--v1", type=float, default=30e-3, help="rim potential scale in V")
    p.add_argument("--exponent", type=float, default=0.05, help="radial exponent n")
    return parser


def _load_config(args):
    config = parse_config(args.config)
    if getattr(args, "out", None):
        from dataclasses import replace
        config = replace(config, output_dir=Path(args.out))
    return config


def _cmd_fit_va(args) -> int:
    d0 = 1e-6
    out_dir = None
    if args.config:
        config = _load_config(args)
        d0 = config.d0_reference
        out_dir = config.output_dir
    if args.out:
        out_dir = Path(args.out)
    samples = load_va_measurements(args.va)
    fit = fit_log_profile(samples, d0)
    print(f"a = {FLOAT_FORMAT.format(fit.a)} V")
    print(f"b = {FLOAT_FORMAT.format(fit.b)} V")
    print(f"rms residual = {FLOAT_FORMAT.format(fit.rms_residual)} V")
    print(f"(d0 = {FLOAT_FORMAT.format(d0)} m, {samples.shape[0]} samples)")
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        text = (f"a_V = {FLOAT_FORMAT.format(fit.a)}\n"
                f"b_V = {FLOAT_FORMAT.format(fit.b)}\n"
                f"rms_V = {FLOAT_FORMAT.format(fit.rms_residual)}\n"
                f"d0_m = {FLOAT_FORMAT.format(d0)}\n")
        (out_dir / "va_fit.txt").write_text(text, encoding="utf-8")
        print(f"wrote {out_dir / 'va_fit.txt'}")
    return EXIT_OK


def _run_and_report(args, artifacts: tuple[str, ...], force=None) -> int:
    config = _load_config(args)
    va = load_va_measurements(args.va)
    result = run_pipeline(config, va, force, write=False)
    write_outputs(result, config.output_dir, artifacts)
    sys.stdout.write(result.report_text)
    for name, path in result.written.items():
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_solve_vc(args) -> int:
    return _run_and_report(args, ("vc", "report"))


def _cmd_background(args) -> int:
    return _run_and_report(args, ("vc", "background", "report"))


def _cmd_correct(args) -> int:
    force = load_force_measurements(args.force)
    return _run_and_report(args, ("vc", "background", "corrected", "report"), force)


def _cmd_verify(args) -> int:
    if args.step <= 0.0:
        raise ConfigError("--step must be > 0")
    results = run_verification(args.step)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
        failures += 0 if r.passed else 1
    if failures:
        print(f"{failures} of {len(results)} checks failed")
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def _cmd_demo_surface_model(args) -> int:
    config = _load_config(args)
    geometry = config.geometry
    if geometry.kind is not GeometryKind.SPHERE_PLATE:
        raise ConfigError("demo-surface-model requires a sphere_plate geometry")
    surface = SurfaceModel(v1=args.v1, n=args.exponent,
                           plate_radius=geometry.sphere_radius)
    d_grid = np.logspace(np.log10(1e-6), np.log10(50e-6), 80)
    veff = np.array([effective_potential_from_surface_model(surface, geometry, d)
                     for d in d_grid])
    fit = fit_log_profile(np.column_stack([d_grid, veff]), config.d0_reference)
    span = float(veff.max() - veff.min())
    print(f"surface model: v1 = {args.v1:g} V, n = {args.exponent:g}, "
          f"sphere radius = {geometry.sphere_radius:g} m")
    print(f"log fit over 1-50 um: a = {FLOAT_FORMAT.format(fit.a)} V, "
          f"b = {FLOAT_FORMAT.format(fit.b)} V")
    print(f"rms residual = {FLOAT_FORMAT.format(fit.rms_residual)} V "
          f"({100.0 * fit.rms_residual / span:.3f}% of the span)")
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(out_dir / "surface_model_demo.csv", ["d_m", "veff_V"], [d_grid, veff])
    print(f"wrote {out_dir / 'surface_model_demo.csv'}")
    return EXIT_OK


_COMMANDS = {
    "fit-va": _cmd_fit_va,
    "solve-vc": _cmd_solve_vc,
    "background": _cmd_background,
    "correct": _cmd_correct,
    "verify": _cmd_verify,
    "demo-surface-model": _cmd_demo_surface_model,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DataError, ConfigError) as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DomainError, RangeError, NumericError) as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ContactBgError as exc:  # any other package error counts as numeric
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
