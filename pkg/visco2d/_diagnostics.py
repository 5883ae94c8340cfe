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

""" Module that provides energies, norms and dissipation bookkeeping.

This module provides the following objects:
DiagnosticsRecord -- one time sample of a trajectory
DissipationLedger -- trapezoidal time integrals of the dissipation rates
BalanceReport -- outcome of the U-balance check
Certificate -- boundedness and dissipation report of a finished run
basic_energy, energy_law_residual, auxiliary_u, u_balance,
theorem_certificate, record -- the diagnostics themselves

"""
import logging
import math
from collections import namedtuple

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

from visco2d import DiagnosticsError
from visco2d._fields import SymTensorField
from visco2d._spectral import (inv_laplacian, laplacian, gradient, div_tensor,
                               sobolev_norm, divergence)
from visco2d._tensor import polar_decompose_left
from visco2d._models import (StrainState, RotStrainState, OldroydState,
                             constraint_residuals, recover_pressure, assemble_f)

logger = logging.getLogger(__name__)


class _error:
    pass


_error.ShortSeries = "series needs at least two records"
_error.TimeOrder = "record times should increase"
_error.Window = "balance window needs three equally spaced states"
_error.StateType = "unsupported state type"

_UNIFORM_TOL = 1e-9
_ENERGY_SLACK = 1e-10
_BOUND_SLACK = 1e-6

Accumulators = namedtuple("Accumulators", "gradu_h2 deltaU_h1 divV_h1 gradu_l2")

Norms = namedtuple("Norms", "u_l2sq V_l2sq deltau_h1 deltaU_h1 divV_h1")

DiagnosticsRecord = namedtuple("DiagnosticsRecord",
                               "t E_basic E_alt gradu_l2sq h2_u h2_V "
                               "deltaU_l2sq residuals accumulators norms")

BalanceReport = namedtuple("BalanceReport", "lhs rhs residual dt_used pressure")

Certificate = namedtuple("Certificate",
                         "rho_sup rho_dis energy_nonincreasing "
                         "max_energy_increase spacetime_ratio spacetime_ok "
                         "rho_l2 divV_identity_ok accumulators")


def strain_view(s):
    """ The (u, V) part of any state; V of an OldroydState by polar decomposition. """
    if isinstance(s, StrainState):
        return s
    if isinstance(s, RotStrainState):
        return StrainState(s.u, s.V)
    if isinstance(s, OldroydState):
        V = polar_decompose_left(s.F.data).V
        return StrainState(s.u, SymTensorField.from_full(s.u.grid, V))
    raise DiagnosticsError(_error.StateType, type(s).__name__)


def basic_energy(s):
    """ Return (E_basic, E_alt).

    E_basic = int |u|^2 + |V|^2 + 2 tr V
    E_alt   = int |u|^2 + (V11 - V22)^2 + (V12 + V21)^2
    They agree wherever tr V = -det V.
    """
    u, V = s.u, s.V
    grid = u.grid
    a, b, c = V.data
    kinetic = u.data[0] ** 2 + u.data[1] ** 2
    e_basic = grid.quadrature(kinetic + a * a + 2 * b * b + c * c + 2 * (a + c))
    e_alt = grid.quadrature(kinetic + (a - c) ** 2 + 4 * b * b)
    return e_basic, e_alt


def auxiliary_u(s, mu=1.0):
    """ U = u + (2/mu) inv_lap div V """
    return s.u + (2.0 / mu) * inv_laplacian(div_tensor(s.V))


def _check_times(times):
    times = np.asarray(times, dtype=float)
    if len(times) < 2:
        raise DiagnosticsError(_error.ShortSeries, "got %d" % len(times))
    if np.any(np.diff(times) <= 0):
        raise DiagnosticsError(_error.TimeOrder)
    return times


def energy_law_residual(series, mu=1.0):
    """ Relative defect of the basic energy law along a series.

    max_t |(E(t) - E(0))/2 + mu int_0^t |grad u|^2| / E(0), the time
    integral by a cumulative Simpson rule over the records. A zero initial
    energy leaves the defect unnormalized.
    """
    times = _check_times([r.t for r in series])
    energy = np.array([r.E_basic for r in series])
    rate = np.array([r.gradu_l2sq for r in series])
    if len(times) >= 3:
        dissipated = cumulative_simpson(rate, x=times, initial=0.0)
    else:
        dissipated = cumulative_trapezoid(rate, x=times, initial=0.0)
    defect = np.abs(0.5 * (energy - energy[0]) + mu * dissipated)
    scale = abs(energy[0]) if energy[0] != 0 else 1.0
    return float(defect.max() / scale)


def _balance_terms(s, mu, pressure):
    U = auxiliary_u(s, mu)
    lapU = laplacian(U)
    lapu = laplacian(s.u)
    p = recover_pressure(s, pressure)
    energy = 0.5 * lapU.l2() ** 2
    dissipation = mu * gradient(lapU).l2() ** 2
    source = (laplacian(p).inner(divergence(lapU)) + lapu.inner(lapU) / mu +
              assemble_f(s, mu).inner(lapU))
    return energy, dissipation, source


def u_balance(states, times, mu=1.0, pressure="projection"):
    """ Check the balance of 1/2 |lap U|^2 over a three state window.

    lhs = central difference of 1/2 |lap U|^2 + Simpson mean of mu |grad lap U|^2
    rhs = Simpson mean of (lap p, div lap U) + (lap u, lap U)/mu + (f, lap U)
    """
    if len(states) != 3 or len(times) != 3:
        raise DiagnosticsError(_error.Window, "got %d states" % len(states))
    times = _check_times(times)
    h0, h1 = times[1] - times[0], times[2] - times[1]
    if abs(h1 - h0) > _UNIFORM_TOL * max(h0, h1):
        raise DiagnosticsError(_error.Window, "steps %r and %r" % (h0, h1))
    terms = [_balance_terms(strain_view(s), mu, pressure) for s in states]
    (e0, d0, r0), (_, d1, r1), (e2, d2, r2) = terms
    lhs = (e2 - e0) / (times[2] - times[0]) + (d0 + 4 * d1 + d2) / 6.0
    rhs = (r0 + 4 * r1 + r2) / 6.0
    return BalanceReport(lhs, rhs, abs(lhs - rhs), h0, pressure)


def pressure_gap(s):
    """ Return |p_projection - p_structural|_L2 and |V|_H1. """
    s = strain_view(s)
    gap = (recover_pressure(s, "projection") -
           recover_pressure(s, "structural")).l2()
    return gap, math.sqrt(sobolev_norm(s.V, 1))


class DissipationLedger(object):

    """ Time integrals of the dissipation rates, trapezoid rule. """

    def __init__(self):
        self.t = None
        self.totals = Accumulators(0.0, 0.0, 0.0, 0.0)
        self._last = None

    def advance(self, t, rates):
        if self.t is not None:
            h = t - self.t
            self.totals = Accumulators(*(acc + 0.5 * h * (a + b) for acc, a, b
                                         in zip(self.totals, self._last, rates)))
        self.t = t
        self._last = rates
        return self.totals


def record(state, t, ledger, mu=1.0):
    """ Return the DiagnosticsRecord of state at time t, advancing ledger. """
    s = strain_view(state)
    u, V = s.u, s.V
    e_basic, e_alt = basic_energy(s)
    gradu = gradient(u)
    divV = div_tensor(V)
    lapu = laplacian(u)
    lapU = lapu + (2.0 / mu) * divV
    norms = Norms(u.l2() ** 2, V.l2() ** 2, sobolev_norm(lapu, 1),
                  sobolev_norm(lapU, 1), sobolev_norm(divV, 1))
    gradu_l2sq = gradu.l2() ** 2
    rates = Accumulators(sobolev_norm(gradu, 2), norms.deltaU_h1,
                         norms.divV_h1, gradu_l2sq)
    accumulators = ledger.advance(t, rates)
    return DiagnosticsRecord(t, e_basic, e_alt, gradu_l2sq,
                             sobolev_norm(u, 2), sobolev_norm(V, 2),
                             lapU.l2() ** 2, constraint_residuals(state),
                             accumulators, norms)


def _ratio(num, den):
    if den > 0:
        return num / den
    return 1.0 if num == 0 else math.inf


def theorem_certificate(series, initial=None, mu=1.0):
    """ Boundedness and dissipation report of a series.

    rho_sup -- sup (h2_u + h2_V) / initial value (0/0 reads as 1)
    rho_dis -- accumulated H^s dissipation over the initial H^2 size
    energy_nonincreasing -- E_basic never grows beyond round-off slack
    spacetime_ratio -- mu int |grad u|^2 / ((|u0|^2 + |V0|^2)/2);
                       spacetime_ok compares the integral with E_basic(0)/2
    rho_l2 -- sup (|u|^2 + 2|V|^2) / initial value
    divV_identity_ok -- (2/mu^2)|div V|_H1^2 <= |lap U|_H1^2 + |lap u|_H1^2
    """
    if not series:
        raise DiagnosticsError(_error.ShortSeries, "got 0")
    if initial is None:
        initial = series[0]
    size0 = initial.h2_u + initial.h2_V
    size = max(r.h2_u + r.h2_V for r in series)
    last = series[-1].accumulators
    dissipated = last.gradu_h2 + last.deltaU_h1 + last.divV_h1
    rho_dis = _ratio(dissipated, size0) if dissipated > 0 else 0.0

    energy = np.array([r.E_basic for r in series])
    slack = _ENERGY_SLACK * max(abs(energy[0]), 1e-300)
    increase = float(np.max(np.diff(energy))) if len(energy) > 1 else 0.0
    nonincreasing = bool(increase <= slack)

    n0 = initial.norms
    spacetime = mu * last.gradu_l2
    spacetime_ratio = _ratio(spacetime, 0.5 * (n0.u_l2sq + n0.V_l2sq))
    spacetime_ok = bool(spacetime <=
                        0.5 * abs(initial.E_basic) * (1 + _BOUND_SLACK) + slack)

    l2 = [r.norms.u_l2sq + 2 * r.norms.V_l2sq for r in series]
    rho_l2 = _ratio(max(l2), n0.u_l2sq + 2 * n0.V_l2sq)

    identity_ok = all(2.0 / mu ** 2 * r.norms.divV_h1 <=
                      (r.norms.deltaU_h1 + r.norms.deltau_h1) *
                      (1 + _BOUND_SLACK) + 1e-300 for r in series)
    cert = Certificate(_ratio(size, size0), rho_dis, nonincreasing, increase,
                       spacetime_ratio, spacetime_ok, rho_l2, identity_ok, last)
    logger.info("certificate: rho_sup %.4g rho_dis %.4g energy %s",
                cert.rho_sup, cert.rho_dis,
                "non-increasing" if nonincreasing else "increasing")
    return cert
