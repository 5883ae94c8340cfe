#  This file is part of the visco2d package, a pseudo-spectral laboratory
#  for two dimensional incompressible viscoelastic flow.
#
#  Copyright (C) 2026 The visco2d developers
#
#  The visco2d package is free software; you can redistribute it and/or
#  modify it under the terms of the GNU Lesser General Public License as
#  published by the Free Software Foundation; either version 2.1 of the
#  License, or (at your option) any later version.
#
#  This library is distributed in the hope that it will be useful, but
#  WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#  Lesser General Public License for more details.
#
#  You should have received a copy of the GNU Lesser General Public
#  License along with this library; if not, write to the Free Software
#  Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA 02111-1307 USA

""" Run the unit tests for the diagnostics """
import math

import numpy as np
import pytest

from visco2d import (make_grid, DiagnosticsError, VectorField, ScalarField,
                     SymTensorField, Tensor2Field, StrainState, RotStrainState,
                     OldroydState, basic_energy, auxiliary_u,
                     energy_law_residual, u_balance, record,
                     theorem_certificate, DissipationLedger, DiagnosticsRecord,
                     leray_project, taylor_green_velocity, initial_states,
                     InitRecipe, SchemeSpec, step, rhs_strain)
from visco2d._diagnostics import (Accumulators, Norms, pressure_gap,
                                  strain_view, _error)
from visco2d._spectral import laplacian, div_tensor
from helpers import raises_kind, random_field, rel

rng = np.random.default_rng(1)  # random, but deterministic


def constant_strain(grid, a, b, c):
    return SymTensorField(grid, np.array([np.full(grid.shape, a),
                                          np.full(grid.shape, b),
                                          np.full(grid.shape, c)]))


def rest(grid):
    return RotStrainState(VectorField.zeros(grid), SymTensorField.zeros(grid),
                          ScalarField.zeros(grid))


def series_of(times, energy, rate):
    """ Records carrying only time, energy and dissipation rate. """
    zero = Accumulators(0.0, 0.0, 0.0, 0.0)
    norms = Norms(0.0, 0.0, 0.0, 0.0, 0.0)
    return [DiagnosticsRecord(t, e, e, r, 0.0, 0.0, 0.0, None, zero, norms)
            for t, e, r in zip(times, energy, rate)]


class TestEnergy:

    def testRest(self):
        grid = make_grid(16)
        assert basic_energy(rest(grid)) == (0.0, 0.0)

    def testUnimodularStretch(self):
        grid = make_grid(16)
        s = StrainState(VectorField.zeros(grid),
                        constant_strain(grid, 1.0, 0.0, -0.5))
        e_basic, e_alt = basic_energy(s)
        expected = (2 * math.pi) ** 2 * 9.0 / 4.0
        assert e_basic == pytest.approx(expected, rel=1e-14)
        assert e_alt == pytest.approx(expected, rel=1e-14)

    def testIsotropicStretch(self):
        grid = make_grid(16)
        s = StrainState(VectorField.zeros(grid),
                        constant_strain(grid, 1.0, 0.0, 1.0))
        e_basic, e_alt = basic_energy(s)
        assert e_basic == pytest.approx(6 * (2 * math.pi) ** 2, rel=1e-14)
        assert e_alt == 0.0

    def testKinetic(self):
        grid = make_grid(16)
        x1, x2 = grid.coordinates()
        u = VectorField(grid, np.array([np.sin(x2), np.zeros(grid.shape)]))
        e_basic, e_alt = basic_energy(StrainState(u, SymTensorField.zeros(grid)))
        assert e_basic == pytest.approx(2 * math.pi ** 2, rel=1e-14)
        assert e_alt == e_basic


class TestAuxiliary:

    def testConstantStrain(self):
        grid = make_grid(16)
        u = leray_project(random_field(grid, VectorField, rng, kmax=3))
        s = StrainState(u, constant_strain(grid, 0.2, 0.1, -0.3))
        assert np.max(np.abs(auxiliary_u(s).data - u.data)) <= 1e-15

    def testSingleMode(self):
        grid = make_grid(16)
        x1, x2 = grid.coordinates()
        zero = np.zeros(grid.shape)
        V = SymTensorField(grid, np.array([np.cos(x1), zero, zero]))
        s = StrainState(VectorField.zeros(grid), V)
        U = auxiliary_u(s, mu=2.0)
        assert np.max(np.abs(U.data[0] - np.sin(x1))) <= 1e-14
        assert np.max(np.abs(U.data[1])) <= 1e-14

    def testLaplacian(self):
        grid = make_grid(32)
        mu = 0.4
        u = leray_project(random_field(grid, VectorField, rng))
        V = random_field(grid, SymTensorField, rng, scale=0.1)
        U = auxiliary_u(StrainState(u, V), mu)
        expected = laplacian(u) + (2.0 / mu) * div_tensor(V)
        assert rel(laplacian(U).data, expected.data) <= 1e-12

    def testStrainView(self):
        grid = make_grid(16)
        s = OldroydState(VectorField.zeros(grid), Tensor2Field.identity(grid))
        view = strain_view(s)
        assert isinstance(view, StrainState)
        assert view.V.max_abs() == 0.0
        with raises_kind(DiagnosticsError, _error.StateType):
            strain_view((1, 2))


class TestEnergyLaw:

    def testShortSeries(self):
        with raises_kind(DiagnosticsError, _error.ShortSeries):
            energy_law_residual(series_of([0.0], [1.0], [0.0]))

    def testTimeOrder(self):
        with raises_kind(DiagnosticsError, _error.TimeOrder):
            energy_law_residual(series_of([0.0, 0.2, 0.1], [1, 1, 1], [0, 0, 0]))

    def testEquilibrium(self):
        times = np.linspace(0.0, 1.0, 11)
        series = series_of(times, [3.0] * 11, [0.0] * 11)
        assert energy_law_residual(series) == 0.0

    def testExactDecay(self):
        # 1/2 E' = -mu |grad u|^2 with E = exp(-2t), |grad u|^2 = exp(-2t)/mu
        mu = 0.5
        times = np.linspace(0.0, 1.0, 101)
        series = series_of(times, np.exp(-2 * times), np.exp(-2 * times) / mu)
        assert energy_law_residual(series, mu) <= 1e-7

    def testViolation(self):
        times = np.linspace(0.0, 1.0, 11)
        series = series_of(times, [1.0] * 11, [1.0] * 11)
        assert energy_law_residual(series) == pytest.approx(1.0, rel=1e-12)

    def testTwoRecords(self):
        series = series_of([0.0, 0.1], [1.0, 0.8], [1.0, 1.0])
        assert energy_law_residual(series) == pytest.approx(0.0, abs=1e-15)


class TestUBalance:

    def testEquilibrium(self):
        grid = make_grid(16)
        s = rest(grid)
        report = u_balance((s, s, s), (0.0, 0.01, 0.02))
        assert report.lhs == 0.0
        assert report.rhs == 0.0
        assert report.residual == 0.0
        assert report.dt_used == pytest.approx(0.01)
        assert report.pressure == "projection"

    def testNavierStokesReduction(self):
        # V = 0: U = u, and for Taylor-Green lap u = -2u, f orthogonal to u
        grid = make_grid(32)
        a, mu = 0.5, 0.5
        u = taylor_green_velocity(grid, a)
        s = StrainState(u, SymTensorField.zeros(grid))
        assert np.max(np.abs(auxiliary_u(s, mu).data - u.data)) == 0.0
        report = u_balance((s, s, s), (0.0, 0.01, 0.02), mu)
        assert report.lhs == pytest.approx(16 * math.pi ** 2 * a * a * mu,
                                           rel=1e-12)
        assert report.rhs == pytest.approx(8 * math.pi ** 2 * a * a / mu,
                                           rel=1e-12)

    @pytest.mark.parametrize("recipe", [InitRecipe(),
                                        InitRecipe(kind="taylor_green",
                                                   amplitude=0.5)])
    def testRefinement(self, recipe):
        grid = make_grid(32)
        s0 = initial_states(grid, recipe)[1]
        residuals = []
        for h in (0.02, 0.01):
            s1 = step(s0, rhs_strain, 1.0, SchemeSpec(dt=h))
            s2 = step(s1, rhs_strain, 1.0, SchemeSpec(dt=h))
            report = u_balance((s0, s1, s2), (0.0, h, 2 * h))
            assert report.residual <= 1e-2 * abs(report.rhs) + 1e-12
            residuals.append(report.residual)
        assert residuals[0] >= 8 * residuals[1]

    def testNonUniform(self):
        grid = make_grid(16)
        s = rest(grid)
        with raises_kind(DiagnosticsError, _error.Window):
            u_balance((s, s, s), (0.0, 0.01, 0.03))

    def testWindowSize(self):
        grid = make_grid(16)
        s = rest(grid)
        with raises_kind(DiagnosticsError, _error.Window):
            u_balance((s, s), (0.0, 0.01))


class TestPressureGap:

    def testRest(self):
        grid = make_grid(16)
        gap, vnorm = pressure_gap(rest(grid))
        assert gap == 0.0
        assert vnorm == 0.0


class TestRecord:

    def testRest(self):
        grid = make_grid(16)
        rec = record(rest(grid), 0.0, DissipationLedger())
        assert rec.E_basic == 0.0
        assert rec.gradu_l2sq == 0.0
        assert rec.h2_u == 0.0
        assert rec.h2_V == 0.0
        assert rec.deltaU_l2sq == 0.0
        assert tuple(rec.accumulators) == (0.0, 0.0, 0.0, 0.0)
        for value in rec.residuals:
            assert value <= 1e-15

    def testShear(self):
        grid = make_grid(16)
        x1, x2 = grid.coordinates()
        u = VectorField(grid, np.array([np.sin(x2), np.zeros(grid.shape)]))
        s = StrainState(u, SymTensorField.zeros(grid))
        ledger = DissipationLedger()
        rec0 = record(s, 0.0, ledger)
        rec1 = record(s, 0.1, ledger)
        assert rec0.gradu_l2sq == pytest.approx(2 * math.pi ** 2, rel=1e-14)
        assert rec0.h2_u == pytest.approx(4 * 2 * math.pi ** 2, rel=1e-14)
        assert rec1.accumulators.gradu_l2 == pytest.approx(0.1 * rec0.gradu_l2sq,
                                                           rel=1e-14)
        assert rec0.accumulators.gradu_l2 == 0.0
        assert rec0.residuals.compat is None

    def testLedger(self):
        ledger = DissipationLedger()
        ledger.advance(0.0, Accumulators(1.0, 2.0, 3.0, 4.0))
        totals = ledger.advance(0.5, Accumulators(3.0, 2.0, 1.0, 0.0))
        assert tuple(totals) == (1.0, 1.0, 1.0, 1.0)


class TestCertificate:

    def testEmpty(self):
        with raises_kind(DiagnosticsError, _error.ShortSeries):
            theorem_certificate([])

    def testEquilibrium(self):
        grid = make_grid(16)
        s = rest(grid)
        ledger = DissipationLedger()
        series = [record(s, t, ledger) for t in (0.0, 0.1, 0.2)]
        cert = theorem_certificate(series)
        assert cert.rho_sup == 1.0
        assert cert.rho_dis == 0.0
        assert cert.energy_nonincreasing
        assert cert.spacetime_ok
        assert cert.divV_identity_ok

    def testGrowth(self):
        times = [0.0, 0.1, 0.2]
        series = series_of(times, [1.0, 1.5, 1.2], [0.0] * 3)
        cert = theorem_certificate(series)
        assert not cert.energy_nonincreasing
        assert cert.max_energy_increase == pytest.approx(0.5)
