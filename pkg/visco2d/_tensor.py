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

""" Pointwise 2x2 matrix algebra.

All functions take arrays whose two leading axes are the matrix indices,
so the same code handles a single matrix (shape (2, 2)) and a whole grid
field (shape (2, 2, n, n)). Scalars come back with the trailing shape.

"""
from collections import namedtuple

import numpy as np

from visco2d import TensorError


class _error:
    pass


_error.NotSPD = "matrix is not symmetric positive definite"
_error.Degenerate = "degenerate deformation (det F too small)"
_error.NearSingular = "2 + tr V is near zero"
_error.SingularStretch = "I + V is near singular"

EPS_SPD = 1e-8
EPS_TR = 1e-8

A = np.array([[0.0, -1.0], [1.0, 0.0]])

PolarParts = namedtuple("PolarParts", "V R theta")


def _eye_like(m):
    eye = np.zeros_like(m)
    eye[0, 0] = 1.0
    eye[1, 1] = 1.0
    return eye


def _matmul(a, b):
    return np.einsum("ik...,kj...->ij...", a, b)


def _trace(m):
    return m[0, 0] + m[1, 1]


def _det(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _worst(values):
    """ Minimum of values and its index (None for a single matrix). """
    values = np.asarray(values)
    if values.ndim == 0:
        return float(values), None
    idx = np.unravel_index(np.argmin(values), values.shape)
    return float(values[idx]), tuple(int(i) for i in idx)


def rotation(theta):
    """ R(theta) = [[cos, -sin], [sin, cos]] """
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def sqrt_spd2(m):
    """ Square root of a symmetric positive definite 2x2 matrix.

    Closed form S = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
    """
    m = np.asarray(m, dtype=float)
    worst, where = _worst(np.minimum(_det(m), _trace(m)))
    if worst <= EPS_SPD or not np.all(np.isfinite(m)):
        raise TensorError(_error.NotSPD, "min(det, tr) = %.3e" % worst,
                          value=worst, location=where)
    return _sqrt2(m)


def _sqrt2(m):
    rdet = np.sqrt(_det(m))
    return (m + rdet * _eye_like(m)) / np.sqrt(_trace(m) + 2.0 * rdet)


def polar_decompose_left(F):
    """ Left polar decomposition F = (I + V) R.

    Returns PolarParts(V, R, theta) with I + V = (F F^T)^(1/2) and
    theta = atan2(R21, R11) in (-pi, pi].
    """
    F = np.asarray(F, dtype=float)
    det = _det(F)
    worst, where = _worst(det)
    if worst <= EPS_SPD:
        raise TensorError(_error.Degenerate, "det F = %.3e" % worst,
                          value=worst, location=where)
    # det(F F^T) = det(F)**2 may sit below the guard, which already passed
    stretch = _sqrt2(_matmul(F, F.swapaxes(0, 1)))
    # (I+V) = F R^T is symmetric iff tan(theta) = (F21 - F12)/(F11 + F22)
    theta = np.arctan2(F[1, 0] - F[0, 1], F[0, 0] + F[1, 1])
    V = stretch - _eye_like(F)
    V[0, 1] = V[1, 0] = 0.5 * (V[0, 1] + V[1, 0])
    return PolarParts(V, rotation(theta), theta)


def compose_from_strain_angle(V, theta):
    """ Return F = (I + V) R(theta). """
    V = np.asarray(V, dtype=float)
    ipv = V + _eye_like(V)
    worst, where = _worst(np.minimum(_det(ipv), _trace(ipv)))
    if worst <= EPS_SPD:
        raise TensorError(_error.NotSPD, "I + V: min(det, tr) = %.3e" % worst,
                          value=worst, location=where)
    return _matmul(ipv, rotation(theta))


def velocity_split(gradu):
    """ Return (S(u), omega12(u)) from (grad u)_ij = d_j u_i. """
    g = np.asarray(gradu, dtype=float)
    S = 0.5 * (g + g.swapaxes(0, 1))
    omega12 = 0.5 * (g[0, 1] - g[1, 0])
    return S, omega12


def gamma_coefficient(gradu, V):
    """ Rotation coupling coefficient.

    gamma = [tr V omega12(u) - (d_k u_1 V_k2 - d_k u_2 V_k1)] / (2 + tr V)
    """
    g = np.asarray(gradu, dtype=float)
    V = np.asarray(V, dtype=float)
    trv = _trace(V)
    denom = 2.0 + trv
    worst, where = _worst(np.abs(denom))
    if worst <= EPS_TR:
        raise TensorError(_error.NearSingular, "|2 + tr V| = %.3e" % worst,
                          value=worst, location=where)
    omega12 = 0.5 * (g[0, 1] - g[1, 0])
    mixed = (g[0, 0] * V[0, 1] + g[0, 1] * V[1, 1]
             - g[1, 0] * V[0, 0] - g[1, 1] * V[1, 0])
    return (trv * omega12 - mixed) / denom


def a_commutator(V):
    """ V A - A V; symmetric whenever V is. """
    V = np.asarray(V, dtype=float)
    a = np.broadcast_to(A.reshape(A.shape + (1,) * (V.ndim - 2)), V.shape)
    return _matmul(V, a) - _matmul(a, V)


def inv_i_plus_v(V):
    """ Exact inverse of I + V (adjugate over determinant). """
    V = np.asarray(V, dtype=float)
    ipv = V + _eye_like(V)
    det = _det(ipv)
    worst, where = _worst(det)
    if worst <= EPS_SPD:
        raise TensorError(_error.SingularStretch, "det(I + V) = %.3e" % worst,
                          value=worst, location=where)
    adj = np.array([[ipv[1, 1], -ipv[0, 1]], [-ipv[1, 0], ipv[0, 0]]])
    return adj / det


def apply_a(m):
    """ Left multiplication by A of a vector (2, ...) or matrix (2, 2, ...). """
    m = np.asarray(m, dtype=float)
    return np.stack((-m[1], m[0]))


def matvec(m, v):
    return np.einsum("ik...,k...->i...", m, v)
