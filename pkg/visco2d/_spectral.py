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

""" Spectral operators on grid fields.

This module provides the following public objects:
derivative -- exact derivative of the trigonometric interpolant
inv_laplacian -- mean-free inverse Laplacian
leray_project -- projection onto divergence-free vector fields
dealias -- 2/3-rule truncation
sobolev_norm -- squared H^s norm by Parseval

and the vector calculus the models are written in (gradient,
divergence, div_tensor, perp_grad, perp_gradient, laplacian, advect,
dealiased_product).

Every operator returns a new field; inputs are never modified.

"""
import warnings

import numpy as np

from visco2d import SpectralWarning
from visco2d._fields import (_Field, ScalarField, VectorField,
                             SymTensorField, Tensor2Field)


class _error:
    pass


_error.Axis = "derivative axis should be 1 or 2"
_error.Order = "Sobolev index should be one of 0, 1, 2, 3"
_error.MeanDrop = "inverse Laplacian dropped a non-zero mean"

_MEAN_TOL = 1e-10


def _symbol(grid, axis):
    if axis == 1:
        return 1j * grid.k1
    elif axis == 2:
        return 1j * grid.k2
    raise ValueError(_error.Axis + ", got %r" % (axis,))


def derivative(f, axis):
    """ Return the derivative of f along x1 (axis=1) or x2 (axis=2). """
    f.check_finite("derivative input")
    ik = _symbol(f.grid, axis)
    return type(f).from_hat(f.grid, ik * f.hat())


def laplacian(f):
    return type(f).from_hat(f.grid, -f.grid.ksq * f.hat())


def inv_laplacian(f):
    """ Return the mean-free g with laplacian(g) = f - mean(f).

    A warning (SpectralWarning) flags inputs whose mean is not negligible;
    the k=0 mode is dropped regardless.
    """
    grid = f.grid
    fh = f.hat()
    mean = np.abs(fh[..., 0, 0]) / grid.n ** 2
    scale = max(1.0, f.max_abs())
    if np.max(mean) > _MEAN_TOL * scale:
        warnings.warn("%s (|mean| = %.3e)" % (_error.MeanDrop, np.max(mean)),
                      SpectralWarning, stacklevel=2)
    ksq = grid.ksq
    inv = np.zeros_like(ksq)
    np.divide(-1.0, ksq, out=inv, where=ksq > 0)
    return type(f).from_hat(grid, inv * fh)


def leray_project(v):
    """ Return the divergence-free part of the vector field v. """
    grid = v.grid
    vh = v.hat()
    k1, k2, ksq = grid.k1, grid.k2, grid.ksq
    kdotv = k1 * vh[0] + k2 * vh[1]
    q = np.zeros_like(kdotv)
    np.divide(kdotv, ksq, out=q, where=ksq > 0)
    wh = np.stack((vh[0] - k1 * q, vh[1] - k2 * q))
    return VectorField.from_hat(grid, wh)


def dealias(f):
    """ Zero every mode outside the 2/3-rule mask. """
    return type(f).from_hat(f.grid, f.grid.dealias_mask * f.hat())


def dealiased_product(grid, values, cls):
    """ Wrap pointwise products in a field of type cls, dealiased once. """
    return cls.from_hat(grid, grid.dealias_mask * grid.fft(values))


def sobolev_norm(f, s):
    """ Return the squared H^s norm sum_k (1+|k|^2)^s |f_k|^2.

    Normalized so that s=0 is the integral of |f|^2 over the domain; tensor
    fields are summed over their full set of components.
    """
    if s not in (0, 1, 2, 3):
        raise ValueError(_error.Order + ", got %r" % (s,))
    grid = f.grid
    fh = f.hat() * np.sqrt((1.0 + grid.ksq) ** s)
    if not f._cshape:
        return grid.parseval(fh, fh)
    total = 0.0
    flat = fh.reshape((-1,) + grid.spectral_shape)
    weights = f._weights or (1.0,) * flat.shape[0]
    for w, ch in zip(weights, flat):
        total += w * grid.parseval(ch, ch)
    return total


# vector calculus

def grad(f):
    """ Gradient of a scalar field. """
    grid = f.grid
    fh = f.hat()
    return VectorField.from_hat(grid, np.stack((1j * grid.k1 * fh,
                                                1j * grid.k2 * fh)))


def perp_grad(f):
    """ (-d2 f, d1 f) """
    grid = f.grid
    fh = f.hat()
    return VectorField.from_hat(grid, np.stack((-1j * grid.k2 * fh,
                                                1j * grid.k1 * fh)))


def gradient(u):
    """ Velocity gradient with (grad u)_ij = d_j u_i. """
    grid = u.grid
    uh = u.hat()
    ik1, ik2 = 1j * grid.k1, 1j * grid.k2
    return Tensor2Field.from_hat(grid, np.array([[ik1 * uh[0], ik2 * uh[0]],
                                                 [ik1 * uh[1], ik2 * uh[1]]]))


def perp_gradient(z):
    """ Matrix with entries perp_j z_i, perp = (-d2, d1). """
    grid = z.grid
    zh = z.hat()
    p1, p2 = -1j * grid.k2, 1j * grid.k1
    return Tensor2Field.from_hat(grid, np.array([[p1 * zh[0], p2 * zh[0]],
                                                 [p1 * zh[1], p2 * zh[1]]]))


def divergence(v):
    grid = v.grid
    vh = v.hat()
    return ScalarField.from_hat(grid, 1j * grid.k1 * vh[0] +
                                1j * grid.k2 * vh[1])


def div_tensor(t):
    """ Row divergence (div T)_i = sum_j d_j T_ij. """
    grid = t.grid
    if isinstance(t, SymTensorField):
        th = grid.fft(t.full())
    else:
        th = t.hat()
    ik1, ik2 = 1j * grid.k1, 1j * grid.k2
    return VectorField.from_hat(grid, np.stack((ik1 * th[0, 0] + ik2 * th[0, 1],
                                                ik1 * th[1, 0] + ik2 * th[1, 1])))


def advect(u, f):
    """ Dealiased transport term u . grad f for any field f. """
    if not isinstance(f, _Field):
        raise TypeError("advect expects a field, got %s" % type(f))
    grid = f.grid
    fh = f.hat()
    d1 = grid.ifft(1j * grid.k1 * fh)
    d2 = grid.ifft(1j * grid.k2 * fh)
    return dealiased_product(grid, u.data[0] * d1 + u.data[1] * d2, type(f))
