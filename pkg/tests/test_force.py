from __future__ import annotations

import numpy as np
import pytest

from contactbg import (
    VACUUM_PERMITTIVITY,
    DomainError,
    ForceCurve,
    NumericError,
    ParametricVa,
    Provenance,
    RangeError,
    background_curve,
    background_identity_gap,
    correct_measured_force,
    electrostatic_energy,
    electrostatic_force_general,
    evaluate_va,
    minimized_background_force,
    solve_vc,
)

EPS0 = VACUUM_PERMITTIVITY
D_MAX = 1e-4
AREA = 1e-4


@pytest.fixture
def parallel_solution(parallel_model, log_profile):
    grid = np.logspace(-6, np.log10(50e-6), 60)
    sol = solve_vc(log_profile, parallel_model, grid, D_MAX)
    return grid, sol


class TestEnergy:
    def test_compensated_potential(self, parallel_model):
        assert electrostatic_energy(parallel_model, 3e-3, -3e-3, 1e-6) == 0.0

    def test_parallel_plate_plugin(self):
        from contactbg import CapacitanceModel, GeometryKind, PlateGeometry
        model = CapacitanceModel(
            PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0),
            domain=(1e-9, 1e2))
        assert electrostatic_energy(model, 1.0, 0.0, 1.0) == pytest.approx(0.5 * EPS0, rel=1e-14)

    def test_quadratic_scaling(self, parallel_model):
        e1 = electrostatic_energy(parallel_model, 2e-3, 1e-3, 5e-6)
        e2 = electrostatic_energy(parallel_model, 4e-3, 2e-3, 5e-6)
        assert e2 == pytest.approx(4.0 * e1, rel=1e-14)


class TestForceGeneral:
    def test_zero_at_minimizing_voltage_constant_vc(self, parallel_model):
        profile = ParametricVa(a=0.0, b=7e-3, d0=1e-6)
        grid = np.logspace(-6, -4.2, 20)
        sol = solve_vc(profile, parallel_model, grid, D_MAX)
        # constant V_a dataset: minimizing voltage is V_a = 7 mV, V_c = -7 mV
        assert electrostatic_force_general(parallel_model, 7e-3, sol, grid[3]) == 0.0

    def test_offset_gives_pure_capacitive_force(self, parallel_model):
        profile = ParametricVa(a=0.0, b=7e-3, d0=1e-6)
        grid = np.logspace(-6, -4.2, 20)
        sol = solve_vc(profile, parallel_model, grid, D_MAX)
        d = grid[5]
        delta = 2e-3
        expected = 0.5 * parallel_model.derivative(d) * delta**2
        assert electrostatic_force_general(parallel_model, 7e-3 + delta, sol, d) \
            == pytest.approx(expected, rel=1e-12)

    def test_parallel_closed_form_value(self, parallel_solution, parallel_model, log_profile):
        # oracle: closed-form u and V_c' = u/d substituted into the force law
        grid, sol = parallel_solution
        d = grid[10]
        va_d = evaluate_va(log_profile, d)
        u = log_profile.a * (d / D_MAX - 1.0)
        c = parallel_model.capacitance(d)
        cp = parallel_model.derivative(d)
        expected = 0.5 * cp * u * u + c * u * (u / d)
        got = electrostatic_force_general(parallel_model, va_d, sol, d)
        assert got == pytest.approx(expected, rel=1e-9)

    def test_stationary_at_minimizing_voltage(self, parallel_solution, parallel_model, log_profile):
        grid, sol = parallel_solution
        d = grid[20]
        va_d = evaluate_va(log_profile, d)
        h = 10e-6  # 10 uV probe step
        f_plus = electrostatic_force_general(parallel_model, va_d + h, sol, d)
        f_minus = electrostatic_force_general(parallel_model, va_d - h, sol, d)
        slope = (f_plus - f_minus) / (2.0 * h)
        curvature = parallel_model.derivative(d)
        # quadratic in va: central difference of the derivative is exact,
        # and the scale for `slope ~ 0` is curvature * probe step
        assert abs(slope) < 1e-6 * abs(curvature * h)

    def test_second_difference_gives_curvature(self, parallel_solution, parallel_model, log_profile):
        grid, sol = parallel_solution
        d = grid[20]
        va_d = evaluate_va(log_profile, d)
        h = 10e-6
        f0 = electrostatic_force_general(parallel_model, va_d, sol, d)
        f_plus = electrostatic_force_general(parallel_model, va_d + h, sol, d)
        f_minus = electrostatic_force_general(parallel_model, va_d - h, sol, d)
        second = (f_plus - 2.0 * f0 + f_minus) / h**2
        assert second == pytest.approx(parallel_model.derivative(d), rel=1e-4)

    def test_three_point_reconstruction_finds_minimizer(self, parallel_solution,
                                                        parallel_model, log_profile):
        grid, sol = parallel_solution
        d = grid[30]
        va_d = evaluate_va(log_profile, d)
        probe = np.array([-1e-3, 0.0, 1e-3]) + 5e-3  # deliberately off-center
        f = [electrostatic_force_general(parallel_model, v, sol, d) for v in probe]
        # F(va) = F0 + F'(va - v1) + C'/2 (va - v1)^2 around v1 = probe[1]
        curv = (f[2] - 2.0 * f[1] + f[0]) / 1e-3**2
        slope = (f[2] - f[0]) / 2e-3
        stationary = probe[1] - slope / curv
        assert stationary == pytest.approx(va_d, rel=1e-9)


class TestMinimizedBackground:
    def test_constant_va_gives_zero(self, parallel_model):
        profile = ParametricVa(a=0.0, b=7e-3, d0=1e-6)
        grid = np.logspace(-6, -4.2, 20)
        sol = solve_vc(profile, parallel_model, grid, D_MAX)
        for d in grid:
            assert minimized_background_force(profile, parallel_model, sol, d) == 0.0

    def test_far_inside_magnitude(self, parallel_model, log_profile):
        # for d << D the compensated potential saturates at -a and
        # F -> eps0 A a^2 / (2 d^2) under the energy-gradient convention
        d = D_MAX / 1000.0
        grid = np.array([d, 10.0 * d])
        sol = solve_vc(log_profile, parallel_model, grid, D_MAX)
        got = minimized_background_force(log_profile, parallel_model, sol, d)
        expected = EPS0 * AREA * log_profile.a**2 / (2.0 * d * d)
        assert got == pytest.approx(expected, rel=0.01)
        assert got > 0.0

    def test_identity_gap_small(self, parallel_solution, parallel_model, log_profile):
        grid, sol = parallel_solution
        assert background_identity_gap(log_profile, parallel_model, sol) < 1e-8

    def test_corrupted_solution_raises(self, parallel_solution, parallel_model, log_profile):
        grid, sol = parallel_solution
        sol.vc[12] += 1e-3
        with pytest.raises(NumericError):
            minimized_background_force(log_profile, parallel_model, sol, grid[12])


class TestForceCurveType:
    def test_grid_validation(self):
        with pytest.raises(DomainError):
            ForceCurve(np.array([2e-6, 1e-6]), np.array([1.0, 2.0]), Provenance.MEASURED)
        with pytest.raises(DomainError):
            ForceCurve(np.array([-1e-6, 1e-6]), np.array([1.0, 2.0]), Provenance.MEASURED)


class TestCorrection:
    def grid(self):
        return np.logspace(-6, -5, 30)

    def test_zero_background_is_identity(self):
        d = self.grid()
        measured = ForceCurve(d, 1e-27 / d**3, Provenance.MEASURED)
        background = ForceCurve(d, np.zeros_like(d), Provenance.COMPUTED_BACKGROUND)
        corrected = correct_measured_force(measured, background)
        assert np.array_equal(corrected.f, measured.f)
        assert corrected.provenance is Provenance.CORRECTED

    def test_perfect_subtraction(self):
        d = self.grid()
        f = 1e-27 / d**3
        measured = ForceCurve(d, f, Provenance.MEASURED)
        background = ForceCurve(d, f, Provenance.COMPUTED_BACKGROUND)
        corrected = correct_measured_force(measured, background)
        assert np.all(corrected.f == 0.0)
        np.testing.assert_allclose(corrected.background_fraction, 1.0, rtol=0.0)

    def test_casimir_like_recovery(self, parallel_model, log_profile):
        d = self.grid()
        sol = solve_vc(log_profile, parallel_model, d, D_MAX)
        bg = background_curve(log_profile, parallel_model, sol)
        casimir = 5e-27 / d**3
        measured = ForceCurve(d, casimir + bg.f, Provenance.MEASURED)
        corrected = correct_measured_force(measured, bg)
        rms = np.sqrt(np.mean((corrected.f - casimir) ** 2))
        assert rms < 0.01 * np.sqrt(np.mean(casimir**2))

    def test_grid_mismatch_without_interpolation(self):
        d = self.grid()
        measured = ForceCurve(d, 1.0 / d, Provenance.MEASURED)
        background = ForceCurve(d * 1.1, 1.0 / d, Provenance.COMPUTED_BACKGROUND)
        with pytest.raises(RangeError):
            correct_measured_force(measured, background)

    def test_interpolated_subtraction_loglog(self):
        d_bg = np.logspace(-6.2, -4.8, 120)
        d_meas = np.logspace(-6, -5, 25)
        bg = ForceCurve(d_bg, 2e-30 / d_bg**2, Provenance.COMPUTED_BACKGROUND)
        measured = ForceCurve(d_meas, 1e-27 / d_meas**3 + 2e-30 / d_meas**2,
                              Provenance.MEASURED)
        corrected = correct_measured_force(measured, bg, interpolate=True)
        # pure power laws are linear in log-log, which pchip preserves
        np.testing.assert_allclose(corrected.f, 1e-27 / d_meas**3, rtol=1e-10)

    def test_interpolated_subtraction_mixed_sign_linear(self):
        d_bg = np.logspace(-6.2, -4.8, 400)
        d_meas = np.logspace(-6, -5, 10)
        f_bg = np.linspace(-1e-12, 1e-12, d_bg.size)
        bg = ForceCurve(d_bg, f_bg, Provenance.COMPUTED_BACKGROUND)
        measured = ForceCurve(d_meas, np.full(d_meas.size, 1e-12), Provenance.MEASURED)
        corrected = correct_measured_force(measured, bg, interpolate=True)
        expected = measured.f - np.interp(np.log(d_meas), np.log(d_bg), f_bg)
        np.testing.assert_allclose(corrected.f, expected, rtol=1e-12)

    def test_out_of_coverage_raises(self):
        d = self.grid()
        bg = ForceCurve(d[5:], 1.0 / d[5:], Provenance.COMPUTED_BACKGROUND)
        measured = ForceCurve(d, 1.0 / d, Provenance.MEASURED)
        with pytest.raises(RangeError):
            correct_measured_force(measured, bg, interpolate=True)
