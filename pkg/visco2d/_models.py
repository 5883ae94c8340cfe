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

""" Semi-discrete models and structural identity residuals.

This module provides the following objects:
OldroydState -- (u, F), the deformation tensor formulation
StrainState -- (u, V), the closed velocity/strain subsystem
RotStrainState -- (u, V, theta), the full rotation-strain system
rhs_oldroyd, rhs_strain, rhs_theta, rhs_rotstrain -- right-hand sides
recover_pressure -- pressure by projection, structural or trace form
assemble_f -- forcing of the Laplacian of U = u + 2/mu inv_lap div V
constraint_residuals -- incompressibility constraint residuals
hodge_residual -- residual of the 2D Hodge identity for symmetric V

Right-hand sides take `viscous=False` to leave out mu*lap(u); the
integrating factor scheme treats that term exactly instead.

"""
from collections import namedtuple

import numpy as np

from visco2d import ModelError
from visco2d._fields import (ScalarField, VectorField, SymTensorField,
                             Tensor2Field)
from visco2d._spectral import (laplacian, inv_laplacian, leray_project,
                               gradient, divergence, div_tensor, grad,
                               perp_grad, perp_gradient, advect,
                               dealiased_product)
from visco2d._tensor import (gamma_coefficient, velocity_split, a_commutator,
                             inv_i_plus_v, polar_decompose_left,
                             compose_from_strain_angle, apply_a, matvec,
                             _matmul)


class _error:
    pass


_error.NonFinite = "non-finite intermediate"
_error.StateType = "unsupported state type"
_error.PressureMode = "unknown pressure mode"
_error.HodgeForm = "unknown Hodge identity form"


OldroydState = namedtuple("OldroydState", "u F")
StrainState = namedtuple("StrainState", "u V")
RotStrainState = namedtuple("RotStrainState", "u V theta")

ConstraintResiduals = namedtuple("ConstraintResiduals",
                                 "detIpV trdet compat newid detF divFT")

PRESSURE_MODES = ("projection", "structural", "trace")


def _finite(field, name):
    if not field.is_finite():
        raise ModelError(_error.NonFinite, name)
    return field


def _outer(a, b):
    return np.einsum("i...,j...->ij...", a, b)


# right-hand sides

def rhs_oldroyd(s, mu, viscous=True):
    """ Right-hand side of the deformation tensor system.

    du = P(-u.grad u + div(F F^T)) + mu lap u
    dF = -u.grad F + grad u F
    """
    u, F = s
    grid = u.grid
    g = gradient(u).data
    ffT = dealiased_product(grid, _matmul(F.data, F.data.swapaxes(0, 1)),
                            Tensor2Field)
    N = _finite(-advect(u, u) + div_tensor(ffT), "momentum")
    du = leray_project(N)
    if viscous:
        du = du + mu * laplacian(u)
    dF = -advect(u, F) + dealiased_product(grid, _matmul(g, F.data),
                                           Tensor2Field)
    return OldroydState(_finite(du, "du"), _finite(dF, "dF"))


def _strain_parts(u, V, mu, viscous):
    grid = u.grid
    g = gradient(u).data
    Vf = V.full()
    gamma = gamma_coefficient(g, Vf)
    S, omega12 = velocity_split(g)
    C = a_commutator(Vf)

    vvT = dealiased_product(grid, _matmul(Vf, Vf), Tensor2Field)
    N = -advect(u, u) + div_tensor(vvT) + 2.0 * div_tensor(V)
    du = leray_project(_finite(N, "momentum"))
    if viscous:
        du = du + mu * laplacian(u)

    stretching = 0.5 * (_matmul(g, Vf) + _matmul(Vf, g.swapaxes(0, 1)))
    stretching = stretching + 0.5 * (omega12 - gamma) * C
    dV = (-advect(u, V) + SymTensorField.from_full(grid, S) +
          dealiased_product(grid, SymTensorField.from_full(grid, stretching)
                            .data, SymTensorField))
    return _finite(du, "du"), _finite(dV, "dV"), omega12, gamma


def rhs_strain(s, mu, viscous=True):
    """ Right-hand side of the closed (u, V) subsystem.

    du = P(-u.grad u + div(V V^T) + 2 div V) + mu lap u
    dV = -u.grad V + S(u) + (grad u V + V grad u^T)/2
         + (omega12(u) - gamma)(VA - AV)/2
    """
    du, dV, _, _ = _strain_parts(s.u, s.V, mu, viscous)
    return StrainState(du, dV)


def _theta_rhs(u, theta, omega12, gamma):
    grid = u.grid
    dtheta = (-advect(u, theta) + ScalarField(grid, -omega12) +
              dealiased_product(grid, gamma, ScalarField))
    return _finite(dtheta, "dtheta")


def rhs_theta(s):
    """ Right-hand side of the angle equation: -u.grad theta - omega12 + gamma """
    u, V, theta = s
    g = gradient(u).data
    gamma = gamma_coefficient(g, V.full())
    _, omega12 = velocity_split(g)
    return _theta_rhs(u, theta, omega12, gamma)


def rhs_rotstrain(s, mu, viscous=True):
    """ Joint right-hand side of (u, V, theta). """
    u, V, theta = s
    du, dV, omega12, gamma = _strain_parts(u, V, mu, viscous)
    return RotStrainState(du, dV, _theta_rhs(u, theta, omega12, gamma))


# pressure and the U-equation forcing

def _structural_flux(V):
    """ A V (I+V)^-1 A div V, pointwise. """
    Vf = V.full()
    w = div_tensor(V).data
    q = _matmul(apply_a(Vf), inv_i_plus_v(Vf))
    return matvec(q, apply_a(w))


def recover_pressure(s, mode="projection"):
    """ Return the mean-free pressure of a strain state.

    mode -- 'projection': inv_lap div(-u.grad u + div(V V^T) + 2 div V)
            'structural': inv_lap of -div div(u x u) + div div(V V^T)
                          - 2 div[A V (I+V)^-1 A div V]
            'trace': inv_lap of -tr(grad u grad u) + div div(V V^T)
                     + 2 div div V
    """
    if mode not in PRESSURE_MODES:
        raise ModelError(_error.PressureMode, repr(mode))
    u, V = s.u, s.V
    grid = u.grid
    Vf = V.full()
    vvT = dealiased_product(grid, _matmul(Vf, Vf), Tensor2Field)
    elastic = divergence(div_tensor(vvT))
    if mode == "projection":
        N = -advect(u, u) + div_tensor(vvT) + 2.0 * div_tensor(V)
        rhs = divergence(N)
    elif mode == "structural":
        uu = dealiased_product(grid, _outer(u.data, u.data), Tensor2Field)
        flux = dealiased_product(grid, _structural_flux(V), VectorField)
        rhs = (-divergence(div_tensor(uu)) + elastic -
               2.0 * divergence(flux))
    else:
        g = gradient(u).data
        trgg = dealiased_product(grid, np.einsum("ij...,ji...->...", g, g),
                                 ScalarField)
        rhs = -trgg + elastic + 2.0 * divergence(div_tensor(V))
    return _finite(inv_laplacian(_finite(rhs, "pressure source")), "p")


def assemble_f(s, mu=1.0):
    """ Forcing f of the equation for lap U, U = u + 2/mu inv_lap div V.

    lap U_t + u.grad lap U + grad lap p = mu lap^2 U + lap u / mu + f with

    f = -[lap(u.grad u) - u.grad lap u] - 2/mu [div(u.grad V) - u.grad div V]
        + lap div(V V^T) + 1/mu div[grad u V + V grad u^T
                                    + (omega12 - gamma)(VA - AV)]
    """
    u, V = s.u, s.V
    grid = u.grid
    g = gradient(u).data
    Vf = V.full()
    gamma = gamma_coefficient(g, Vf)
    _, omega12 = velocity_split(g)

    t1 = laplacian(advect(u, u)) - advect(u, laplacian(u))
    divV = div_tensor(V)
    t2 = div_tensor(advect(u, V)) - advect(u, divV)
    vvT = dealiased_product(grid, _matmul(Vf, Vf), Tensor2Field)
    t3 = laplacian(div_tensor(vvT))
    M = (_matmul(g, Vf) + _matmul(Vf, g.swapaxes(0, 1)) +
         (omega12 - gamma) * a_commutator(Vf))
    t4 = div_tensor(dealiased_product(grid, M, Tensor2Field))
    f = -t1 - (2.0 / mu) * t2 + t3 + (1.0 / mu) * t4
    return _finite(f, "f")


# identity residuals

def _vector_l2(grid, values):
    return float(np.sqrt(grid.quadrature(np.sum(values ** 2, axis=0))))


def _strain_residuals(V):
    a, b, c = V.data
    det_ipv = (1.0 + a) * (1.0 + c) - b * b
    detIpV = float(np.max(np.abs(det_ipv - 1.0)))
    trdet = float(np.max(np.abs(V.trace() + V.det())))
    newid_field = (divergence(div_tensor(V)).data +
                   divergence(VectorField(V.grid, _structural_flux(V))).data)
    newid = float(np.sqrt(V.grid.quadrature(newid_field ** 2)))
    return detIpV, trdet, newid


def _compat(V, theta):
    grid = V.grid
    ipv = V.full()
    ipv[0, 0] += 1.0
    ipv[1, 1] += 1.0
    res = div_tensor(V).data - apply_a(matvec(ipv, grad(theta).data))
    return _vector_l2(grid, res)


def _deformation_residuals(grid, F):
    detF = float(np.max(np.abs(F[0, 0] * F[1, 1] - F[0, 1] * F[1, 0] - 1.0)))
    divFT = div_tensor(Tensor2Field(grid, F.swapaxes(0, 1).copy())).data
    return detF, _vector_l2(grid, divFT)


def constraint_residuals(s):
    """ Return ConstraintResiduals of a state; inapplicable entries are None.

    Determinant residuals are maximum norms, the others L2 norms. No
    dealiasing is applied, so the numbers measure the fields as stored.
    """
    if isinstance(s, RotStrainState):
        grid = s.u.grid
        detIpV, trdet, newid = _strain_residuals(s.V)
        F = compose_from_strain_angle(s.V.full(), s.theta.data)
        detF, divFT = _deformation_residuals(grid, F)
        return ConstraintResiduals(detIpV, trdet, _compat(s.V, s.theta),
                                   newid, detF, divFT)
    elif isinstance(s, StrainState):
        detIpV, trdet, newid = _strain_residuals(s.V)
        return ConstraintResiduals(detIpV, trdet, None, newid, None, None)
    elif isinstance(s, OldroydState):
        grid = s.u.grid
        V = SymTensorField.from_full(grid, polar_decompose_left(s.F.data).V)
        detIpV, trdet, newid = _strain_residuals(V)
        detF, divFT = _deformation_residuals(grid, s.F.data)
        return ConstraintResiduals(detIpV, trdet, None, newid, detF, divFT)
    raise ModelError(_error.StateType, type(s).__name__)


def hodge_residual(V, form="perp"):
    """ L2 residual of the Hodge identity for a symmetric field V.

    form -- 'perp': lap V = grad div V + perp^2 tr V - perp(A div V)
            'curl': lap V = grad div V - curl curl V
    Exact for every symmetric V, so the result is round-off only.
    """
    grid = V.grid
    lap = laplacian(Tensor2Field(grid, V.full()))
    w = div_tensor(V)
    graddiv = gradient(w)
    if form == "perp":
        pp = perp_gradient(perp_grad(ScalarField(grid, V.trace())))
        pa = perp_gradient(VectorField(grid, apply_a(w.data)))
        res = lap - graddiv - pp + pa
    elif form == "curl":
        vh = grid.fft(V.full())
        ik1, ik2 = 1j * grid.k1, 1j * grid.k2
        # row i: c_i = d1 V_i2 - d2 V_i1, curl curl row = (d2 c_i, -d1 c_i)
        ch = ik1 * vh[:, 1] - ik2 * vh[:, 0]
        cc = np.stack((ik2 * ch, -ik1 * ch), axis=1)
        res = lap - graddiv + Tensor2Field.from_hat(grid, cc)
    else:
        raise ModelError(_error.HodgeForm, repr(form))
    return res.l2()
