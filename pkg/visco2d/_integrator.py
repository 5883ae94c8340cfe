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

""" Module with the time steppers.

SchemeSpec -- scheme kind, step size and CFL settings
step -- advance any state by one step
cfl_dt -- CFL limited step size

States are named tuples of fields. A field named 'u' is the velocity: it
is diffused (exactly, for if_rk4) and re-projected after every stage.
Right-hand sides are called as rhs(state, mu, viscous=...).

"""
import logging
import warnings
from collections import namedtuple

import numpy as np

from visco2d import IntegrationError, StabilizerWarning
from visco2d._spectral import leray_project, laplacian

logger = logging.getLogger(__name__)


class _error:
    pass


_error.Kind = "unknown scheme kind"
_error.Step = "time step should be positive and finite"
_error.Safety = "CFL safety factor should lie in (0, 1]"
_error.Hyper = "hyperviscosity should be non-negative"
_error.NonFinite = "non-finite state after step"

SCHEMES = ("if_rk4", "rk4_explicit")

SchemeSpec = namedtuple("SchemeSpec", "kind dt cfl_safety adaptive hyperviscosity",
                        defaults=("if_rk4", 1e-3, 0.5, False, 0.0))


def check_scheme(scheme):
    if scheme.kind not in SCHEMES:
        raise IntegrationError(_error.Kind, repr(scheme.kind))
    if not (np.isfinite(scheme.dt) and scheme.dt > 0):
        raise IntegrationError(_error.Step, "got %r" % (scheme.dt,))
    if not 0 < scheme.cfl_safety <= 1:
        raise IntegrationError(_error.Safety, "got %r" % (scheme.cfl_safety,))
    if not scheme.hyperviscosity >= 0:
        raise IntegrationError(_error.Hyper, "got %r" % (scheme.hyperviscosity,))
    if scheme.hyperviscosity > 0:
        warnings.warn("hyperviscosity %g on the non-diffused fields; the run "
                      "does not qualify for acceptance" % scheme.hyperviscosity,
                      StabilizerWarning, stacklevel=3)


# state algebra

def _axpy(s, h, k):
    """ s + h*k, field by field """
    return type(s)(*(a + h * b for a, b in zip(s, k)))


def _project(s):
    if "u" not in s._fields:
        return s
    return s._replace(u=leray_project(s.u))


class _Propagator(object):

    """ Exact solution operator of the linear part over a time tau.

    u decays with exp(-mu |k|^2 tau); the other fields are left alone
    unless the hyperviscosity nu_h > 0, then exp(-nu_h |k|^4 tau).
    """

    __slots__ = ("mu", "nu_h", "_cache")

    def __init__(self, mu, nu_h):
        self.mu = mu
        self.nu_h = nu_h
        self._cache = {}

    def _factor(self, grid, name, tau):
        key = (grid, name, tau)
        if key not in self._cache:
            if name == "u":
                self._cache[key] = np.exp(-self.mu * grid.ksq * tau)
            else:
                self._cache[key] = np.exp(-self.nu_h * grid.ksq ** 2 * tau)
        return self._cache[key]

    def __call__(self, s, tau):
        fields = []
        for name, f in zip(s._fields, s):
            if name != "u" and self.nu_h == 0:
                fields.append(f)
                continue
            fields.append(type(f).from_hat(f.grid,
                                           self._factor(f.grid, name, tau) *
                                           f.hat()))
        return type(s)(*fields)


def _hyper_rhs(rhs, nu_h):
    """ Add -nu_h lap^2 to the non-velocity fields of an explicit rhs. """
    if nu_h == 0:
        return rhs

    def wrapped(s, mu, viscous=True):
        k = rhs(s, mu, viscous=viscous)
        return type(k)(*(kf if name == "u" else
                         kf - nu_h * laplacian(laplacian(sf))
                         for name, sf, kf in zip(s._fields, s, k)))

    return wrapped


def _if_rk4(s, rhs, mu, h, E):
    # Lawson RK4 in the variable E(-t) s
    N = lambda x: rhs(x, mu, viscous=False)
    h2 = 0.5 * h
    k1 = N(s)
    a = _project(E(_axpy(s, h2, k1), h2))
    k2 = N(a)
    b = _project(_axpy(E(s, h2), h2, k2))
    k3 = N(b)
    c = _project(_axpy(E(s, h), h, E(k3, h2)))
    k4 = N(c)
    out = E(s, h)
    out = _axpy(out, h / 6.0, E(k1, h))
    out = _axpy(out, h / 3.0, E(k2, h2))
    out = _axpy(out, h / 3.0, E(k3, h2))
    out = _axpy(out, h / 6.0, k4)
    return _project(out)


def _rk4(s, rhs, mu, h):
    N = lambda x: rhs(x, mu, viscous=True)
    k1 = N(s)
    k2 = N(_project(_axpy(s, 0.5 * h, k1)))
    k3 = N(_project(_axpy(s, 0.5 * h, k2)))
    k4 = N(_project(_axpy(s, h, k3)))
    out = _axpy(s, h / 6.0, k1)
    out = _axpy(out, h / 3.0, k2)
    out = _axpy(out, h / 3.0, k3)
    out = _axpy(out, h / 6.0, k4)
    return _project(out)


def step(state, rhs, mu, scheme, dt=None, step_index=None):
    """ Advance state by one step and return the new state.

    state -- named tuple of fields (any formulation)
    rhs -- right-hand side, called as rhs(state, mu, viscous=...)
    mu -- viscosity of the 'u' field
    scheme -- SchemeSpec
    dt -- step size override (e.g. from cfl_dt); default scheme.dt
    step_index -- reported in IntegrationError

    """
    check_scheme(scheme)
    h = scheme.dt if dt is None else dt
    if not (np.isfinite(h) and h > 0):
        raise IntegrationError(_error.Step, "got %r" % (h,), step=step_index)
    nu_h = scheme.hyperviscosity
    if scheme.kind == "if_rk4":
        new = _if_rk4(state, rhs, mu, h, _Propagator(mu, nu_h))
    else:
        new = _rk4(state, _hyper_rhs(rhs, nu_h), mu, h)
    for name, f in zip(new._fields, new):
        if not f.is_finite():
            raise IntegrationError(_error.NonFinite, "field %s" % name,
                                   step=step_index, field=name)
    return new


def elastic_speed(state):
    """ Largest singular value of F, or of I + V for strain states. """
    if "F" in state._fields:
        F = state.F.data
        m = np.einsum("ki...,kj...->ij...", F, F)
        tr = m[0, 0] + m[1, 1]
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        disc = np.sqrt(np.maximum(0.25 * tr * tr - det, 0.0))
        return float(np.sqrt(np.max(0.5 * tr + disc)))
    if "V" in state._fields:
        a, b, c = state.V.data
        mid = 1.0 + 0.5 * (a + c)
        rad = np.sqrt(0.25 * (a - c) ** 2 + b * b)
        return float(np.max(np.abs(mid) + rad))
    return 0.0


def cfl_dt(state, grid, cfl_safety, dt_max):
    """ Return cfl_safety * dx / max(|u|_inf, c_el), capped at dt_max.

    c_el is the largest elastic transport speed (elastic_speed); with
    neither velocity nor strain the cap is returned.
    """
    speed = elastic_speed(state)
    if "u" in state._fields:
        speed = max(speed, float(state.u.magnitude().max()))
    if speed <= 0:
        return dt_max
    return min(dt_max, cfl_safety * grid.dx / speed)
