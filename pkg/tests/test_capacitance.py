from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import quad

from contactbg import (
    VACUUM_PERMITTIVITY,
    CapacitanceModel,
    DerivativeMode,
    DomainError,
    GeometryKind,
    PlateGeometry,
    RangeError,
    capacitance,
    capacitance_derivative,
    central_derivative,
    effective_gap,
    richardson_derivative,
)

EPS0 = VACUUM_PERMITTIVITY
R_SPHERE = 150e-6


def sphere_model(lam=0.0, eps=1.0, k=0, mode=DerivativeMode.ANALYTIC):
    geometry = PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=R_SPHERE,
                             debye_length=lam, relative_permittivity=eps,
                             screened_surfaces=k)
    return CapacitanceModel(geometry, mode, domain=(1e-9, 1e-1))


def parallel_model(area=1.0, lam=0.0, eps=1.0, k=0, mode=DerivativeMode.ANALYTIC,
                   domain=(1e-9, 1e2)):
    geometry = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=area,
                             debye_length=lam, relative_permittivity=eps,
                             screened_surfaces=k)
    return CapacitanceModel(geometry, mode, domain=domain)


class TestEffectiveGap:
    def test_zero_screening_is_identity(self):
        geom = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0,
                             debye_length=0.0, relative_permittivity=16.0,
                             screened_surfaces=2)
        d = np.logspace(-7, -4, 40)
        assert np.array_equal(effective_gap(d, geom), d)
        assert effective_gap(1e-6, geom) == 1e-6

    @pytest.mark.parametrize("surfaces,expected", [(2, 1.085e-6), (1, 1.0425e-6)])
    def test_ge_debye_correction(self, surfaces, expected):
        geom = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0,
                             debye_length=0.68e-6, relative_permittivity=16.0,
                             screened_surfaces=surfaces)
        assert effective_gap(1e-6, geom) == pytest.approx(expected, rel=1e-12)

    def test_monotone_in_d(self):
        geom = PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=R_SPHERE,
                             debye_length=0.68e-6, relative_permittivity=16.0)
        d = np.logspace(-7, -4, 100)
        assert np.all(np.diff(effective_gap(d, geom)) > 0.0)

    def test_nonpositive_d_rejected(self):
        geom = PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0)
        with pytest.raises(DomainError):
            effective_gap(0.0, geom)
        with pytest.raises(DomainError):
            effective_gap(-1e-6, geom)


class TestGeometryValidation:
    def test_bad_fields(self):
        with pytest.raises(DomainError):
            PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=0.0)
        with pytest.raises(DomainError):
            PlateGeometry(GeometryKind.SPHERE_PLATE, sphere_radius=-1.0)
        with pytest.raises(DomainError):
            PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0, debye_length=-1e-9)
        with pytest.raises(DomainError):
            PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0,
                          relative_permittivity=0.5)
        with pytest.raises(DomainError):
            PlateGeometry(GeometryKind.PARALLEL_PLATE, plate_area=1.0,
                          screened_surfaces=3)


class TestParallelPlate:
    def test_unit_plate_at_one_meter(self):
        model = parallel_model()
        assert model.capacitance(1.0) == pytest.approx(EPS0, rel=1e-15)

    def test_inverse_distance_scaling(self):
        model = parallel_model(area=1e-4)
        d = np.logspace(-6, -4, 30)
        np.testing.assert_allclose(model.capacitance(2.0 * d),
                                   model.capacitance(d) / 2.0, rtol=1e-14)

    def test_analytic_derivative(self):
        model = parallel_model(area=1e-4)
        d = 10e-6
        assert model.derivative(d) == pytest.approx(-EPS0 * 1e-4 / d**2, rel=1e-14)

    def test_numeric_matches_analytic(self):
        d = 10e-6
        numeric = parallel_model(area=1e-4, mode=DerivativeMode.NUMERIC_CENTRAL)
        analytic = parallel_model(area=1e-4)
        rel = abs(numeric.derivative(d) - analytic.derivative(d)) / abs(analytic.derivative(d))
        assert rel < 1e-8

    def test_domain_range_error(self):
        model = parallel_model(domain=(1e-6, 1e-4))
        with pytest.raises(RangeError):
            model.capacitance(1e-7)
        with pytest.raises(RangeError):
            capacitance(model, 1.0)


class TestSpherePlate:
    # frozen from an independent adaptive quadrature of the raw pairwise
    # integrand 2 pi eps0 r / (d + R - sqrt(R^2 - r^2))
    ORACLE_C_5UM = 2.12665264985929604e-14

    def test_closed_form_against_frozen_quadrature(self):
        model = sphere_model()
        assert model.capacitance(5e-6) == pytest.approx(self.ORACLE_C_5UM, rel=1e-12)

    def test_closed_form_against_live_quadrature(self):
        model = sphere_model()
        d = 5e-6
        raw = lambda r: 2 * np.pi * EPS0 * r / (d + R_SPHERE - np.sqrt(R_SPHERE**2 - r**2))
        val, _ = quad(raw, 0.0, R_SPHERE, epsabs=0.0, epsrel=1e-12, limit=200)
        assert model.capacitance(d) == pytest.approx(val, rel=1e-9)

    def test_quadrature_matches_closed_form_on_sweep(self):
        model = sphere_model()
        for d in np.logspace(np.log10(R_SPHERE / 1000), np.log10(R_SPHERE), 100):
            closed = model.capacitance(d)
            assert abs(model.capacitance_quadrature(d) - closed) / closed < 1e-9

    def test_quadrature_rejected_for_parallel(self):
        with pytest.raises(DomainError):
            parallel_model().capacitance_quadrature(1e-6)

    def test_numeric_derivative_at_r_over_30(self):
        d = R_SPHERE / 30.0
        numeric = sphere_model(mode=DerivativeMode.NUMERIC_CENTRAL)
        analytic = sphere_model()
        rel = abs(numeric.derivative(d) - analytic.derivative(d)) / abs(analytic.derivative(d))
        assert rel < 1e-6

    def test_analytic_derivative_by_finite_difference_two_steps(self):
        # symbolic derivative of the closed form, checked at two FD steps
        model = sphere_model()
        d = R_SPHERE / 30.0
        for h in (1e-3 * d, 5e-4 * d):
            fd = (model.capacitance(d + h) - model.capacitance(d - h)) / (2 * h)
            assert model.derivative(d) == pytest.approx(fd, rel=1e-5)


class TestModelInvariants:
    @pytest.mark.parametrize("factory", [
        lambda: parallel_model(area=1e-4),
        lambda: parallel_model(area=1e-4, lam=0.68e-6, eps=16.0, k=2),
        lambda: sphere_model(),
        lambda: sphere_model(lam=0.68e-6, eps=16.0, k=2),
    ])
    def test_positive_and_strictly_decreasing(self, factory):
        model = factory()
        d = np.logspace(-6, np.log10(50e-6), 80)
        c = model.capacitance(d)
        cp = model.derivative(d)
        assert np.all(c > 0.0)
        assert np.all(np.diff(c) < 0.0)
        assert np.all(cp < 0.0)

    @pytest.mark.parametrize("factory", [
        lambda: parallel_model(area=1e-4),
        lambda: sphere_model(lam=0.68e-6, eps=16.0, k=2),
    ])
    def test_modes_agree_to_1e6(self, factory):
        analytic = factory()
        numeric = CapacitanceModel(analytic.geometry, DerivativeMode.NUMERIC_CENTRAL,
                                   analytic.domain)
        for d in np.logspace(-6, np.log10(50e-6), 25):
            a = analytic.derivative(d)
            n = numeric.derivative(d)
            assert abs(a - n) / abs(a) < 1e-6

    def test_numeric_stencil_domain_guard(self):
        model = parallel_model(domain=(1e-6, 1e-4), mode=DerivativeMode.NUMERIC_CENTRAL)
        with pytest.raises(RangeError):
            model.derivative(1e-6)  # stencil dips below the domain floor
        assert capacitance_derivative(model, 2e-6) < 0.0


class TestDifferenceOrders:
    # convergence on the sphere closed form at fixed d: halving h cuts the
    # error by 4 (plain central) and 16 (one Richardson level), within 20%
    def test_central_is_second_order(self):
        model = sphere_model()
        d, exact = 5e-6, sphere_model().derivative(5e-6)
        errs = [abs(central_derivative(model.capacitance, d, h) - exact)
                for h in (0.04 * d, 0.02 * d)]
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)

    def test_richardson_is_fourth_order(self):
        model = sphere_model()
        d, exact = 5e-6, sphere_model().derivative(5e-6)
        errs = [abs(richardson_derivative(model.capacitance, d, h) - exact)
                for h in (0.08 * d, 0.04 * d)]
        assert errs[0] / errs[1] == pytest.approx(16.0, rel=0.2)
