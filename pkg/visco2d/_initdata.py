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

""" Module that provides constrained initial data.

This module provides the following objects:
InitRecipe -- description of the initial data
taylor_green_velocity -- solenoidal initial velocity
warm_start_deformation -- F0 transported from I by a frozen stream
states_from_deformation -- matched states of all three formulations
initial_states -- InitRecipe dispatcher

The deformation is never sampled directly: I is transported by a frozen
divergence-free velocity b, which keeps det F = 1 and div F^T = 0 up to
discretization error.

"""
import logging
import math
from collections import namedtuple

import numpy as np

from visco2d import InitError, IntegrationError
from visco2d._fields import ScalarField, VectorField, SymTensorField, Tensor2Field
from visco2d._spectral import (leray_project, dealias, perp_grad, gradient,
                               advect, dealiased_product)
from visco2d._tensor import polar_decompose_left, _matmul
from visco2d._models import (OldroydState, StrainState, RotStrainState,
                             constraint_residuals)
from visco2d._integrator import SchemeSpec, step

logger = logging.getLogger(__name__)


class _error:
    pass


_error.Kind = "unknown initial data kind"
_error.Amplitude = "amplitude should be non-negative"
_error.WarmTime = "warm time should be non-negative"
_error.Stream = "malformed warm stream"
_error.Unstable = "warm start integration is unstable"
_error.Topology = "rotation angle cannot be unwrapped continuously"

INIT_KINDS = ("trivial", "taylor_green", "warm_start")

InitRecipe = namedtuple("InitRecipe", "kind amplitude warm_time warm_stream seed",
                        defaults=("warm_start", 0.05, 0.5, "1 1 0.1", 0))

TransportState = namedtuple("TransportState", "F")

_WARM_DT = 0.01
_WARM_CFL = 0.5
_RANDOM_KMAX = 3


def check_recipe(recipe):
    if recipe.kind not in INIT_KINDS:
        raise InitError(_error.Kind, repr(recipe.kind))
    if not recipe.amplitude >= 0:
        raise InitError(_error.Amplitude, "got %r" % (recipe.amplitude,))
    if not recipe.warm_time >= 0:
        raise InitError(_error.WarmTime, "got %r" % (recipe.warm_time,))


def taylor_green_velocity(grid, amplitude):
    """ amplitude * (sin x1 cos x2, -cos x1 sin x2) on a 2*pi-periodic box """
    x1, x2 = grid.coordinates()
    k = 2.0 * math.pi / grid.length
    data = amplitude * np.array([np.sin(k * x1) * np.cos(k * x2),
                                 -np.cos(k * x1) * np.sin(k * x2)])
    return VectorField(grid, data)


def _parse_triples(text):
    modes = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split()
        if len(parts) != 3:
            raise InitError(_error.Stream, "expected 'k1 k2 c', got %r" % chunk)
        try:
            k1, k2 = int(parts[0]), int(parts[1])
            c = float(parts[2])
        except ValueError:
            raise InitError(_error.Stream, "bad triple %r" % chunk)
        modes.append((k1, k2, c))
    return modes


def stream_function(grid, recipe):
    """ Return the stream function psi described by recipe.warm_stream.

    'k1 k2 c; ...' -- psi = sum c sin(k1 x1) sin(k2 x2)
    'random amp'   -- seeded random modes |k| <= 3, max|perp grad psi| = amp
    """
    text = recipe.warm_stream.strip()
    x1, x2 = grid.coordinates()
    scale = 2.0 * math.pi / grid.length
    if text.startswith("random"):
        parts = text.split()
        try:
            (amp,) = [float(p) for p in parts[1:]]
        except ValueError:
            raise InitError(_error.Stream, "expected 'random <amp>', got %r"
                            % text)
        rng = np.random.default_rng(recipe.seed)
        psi = np.zeros(grid.shape)
        for k1 in range(-_RANDOM_KMAX, _RANDOM_KMAX + 1):
            for k2 in range(0, _RANDOM_KMAX + 1):
                if not 0 < k1 * k1 + k2 * k2 <= _RANDOM_KMAX ** 2:
                    continue
                a, phase = rng.standard_normal(), rng.uniform(0, 2 * math.pi)
                psi += a * np.cos(scale * (k1 * x1 + k2 * x2) + phase)
        f = ScalarField(grid, psi)
        peak = perp_grad(f).magnitude().max()
        return f * (amp / peak) if peak > 0 else f
    psi = np.zeros(grid.shape)
    for k1, k2, c in _parse_triples(text):
        psi += c * np.sin(scale * k1 * x1) * np.sin(scale * k2 * x2)
    return ScalarField(grid, psi)


def rhs_transport(b):
    """ Right-hand side F_s = -b.grad F + grad b F for a frozen velocity b. """
    gb = gradient(b).data

    def rhs(s, mu, viscous=True):
        F = s.F
        dF = -advect(b, F) + dealiased_product(F.grid, _matmul(gb, F.data),
                                               Tensor2Field)
        return TransportState(dF)

    return rhs


def warm_start_deformation(grid, recipe, dt=_WARM_DT):
    """ Transport F = I over [0, warm_time] with the frozen stream velocity.

    The step is the smaller of dt and half the CFL limit of b, shrunk so
    that a whole number of steps lands on warm_time.
    """
    F = Tensor2Field.identity(grid)
    if recipe.warm_time == 0:
        return F
    b = perp_grad(stream_function(grid, recipe))
    speed = b.magnitude().max()
    if speed == 0:
        return F
    h = min(dt, _WARM_CFL * grid.dx / speed)
    nsteps = int(math.ceil(recipe.warm_time / h - 1e-12))
    h = recipe.warm_time / nsteps
    cfl = h * speed / grid.dx
    logger.debug("warm start: %d steps of %g, CFL %.3f", nsteps, h, cfl)

    scheme = SchemeSpec(kind="rk4_explicit", dt=h)
    rhs = rhs_transport(b)
    s = TransportState(F)
    try:
        for i in range(nsteps):
            s = step(s, rhs, 0.0, scheme, step_index=i)
    except IntegrationError as e:
        raise InitError(_error.Unstable, "CFL %.3f, step %s: %s" %
                        (cfl, e.step, e))
    return s.F


def unwrap_angle(theta):
    """ Continuous version of a grid angle field.

    Unwrap along x1 at x2 = 0, then along x2 for every row. Every periodic
    neighbour difference of the result must stay below pi.
    """
    col = np.unwrap(theta[:, 0])
    out = np.unwrap(np.concatenate((col[:, None], theta[:, 1:]), axis=1),
                    axis=1)
    for axis in (0, 1):
        jump = np.abs(out - np.roll(out, 1, axis=axis))
        if jump.max() >= math.pi:
            where = np.unravel_index(np.argmax(jump), jump.shape)
            raise InitError(_error.Topology, "jump %.3f at %s along axis %d" %
                            (jump.max(), tuple(int(i) for i in where), axis))
    return out


def states_from_deformation(u0, F0):
    """ Return matched (OldroydState, StrainState, RotStrainState).

    V0 and theta0 come from the pointwise left polar decomposition of F0
    and are dealiased afterwards; u0 is projected and dealiased.
    """
    grid = u0.grid
    u = dealias(leray_project(u0))
    parts = polar_decompose_left(F0.data)
    V = dealias(SymTensorField.from_full(grid, parts.V))
    theta = dealias(ScalarField(grid, unwrap_angle(parts.theta)))
    states = (OldroydState(u, F0.copy()), StrainState(u, V),
              RotStrainState(u, V, theta))
    res = constraint_residuals(states[2])
    logger.info("initial residuals: detIpV %.3e trdet %.3e compat %.3e "
                "newid %.3e detF %.3e divFT %.3e", *res)
    return states


def initial_states(grid, recipe, warm_dt=_WARM_DT):
    """ Build the matched initial states for an InitRecipe.

    warm_dt -- largest step of the warm start transport
    """
    check_recipe(recipe)
    if recipe.kind == "trivial":
        u0 = VectorField.zeros(grid)
        F0 = Tensor2Field.identity(grid)
    elif recipe.kind == "taylor_green":
        u0 = taylor_green_velocity(grid, recipe.amplitude)
        F0 = Tensor2Field.identity(grid)
    else:
        u0 = taylor_green_velocity(grid, recipe.amplitude)
        F0 = warm_start_deformation(grid, recipe, dt=warm_dt)
    return states_from_deformation(u0, F0)
