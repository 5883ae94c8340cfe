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

""" Module with the grid field classes.

ScalarField -- one value per point, data shape (n, n)
VectorField -- two components, data shape (2, n, n)
SymTensorField -- V11, V12, V22, data shape (3, n, n)
Tensor2Field -- full 2x2 matrix, data shape (2, 2, n, n)

Fields support addition, subtraction and scaling by reals, which is all
the time integrators need.

"""
import numpy as np

from visco2d import FieldError


class _error:
    pass


_error.Shape = "field data does not match the grid"
_error.Type = "fields should have the same type and grid"
_error.NonFinite = "non-finite field values"


class _Field(object):

    __slots__ = ("grid", "data")

    _cshape = ()
    _weights = None

    def __init__(self, grid, data):
        data = np.asarray(data, dtype=float)
        expected = self._cshape + grid.shape
        if data.shape != expected:
            raise FieldError(_error.Shape, "%s expects %s, got %s" %
                             (type(self).__name__, expected, data.shape))
        self.grid = grid
        self.data = data

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(cls._cshape + grid.shape))

    @classmethod
    def from_hat(cls, grid, ah):
        return cls(grid, grid.ifft(ah))

    @classmethod
    def random(cls, grid, rng, kmax=8):
        """ Real random trigonometric polynomial with modes |k_i| <= kmax. """
        noise = rng.standard_normal(cls._cshape + grid.shape)
        m1 = np.abs(grid.wavenumbers)[:, None]
        m2 = np.arange(grid.n // 2 + 1)[None, :]
        keep = (m1 <= kmax) & (m2 <= kmax)
        return cls.from_hat(grid, keep * grid.fft(noise))

    def hat(self):
        return self.grid.fft(self.data)

    def copy(self):
        return type(self)(self.grid, self.data.copy())

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.grid)

    # arithmetic

    def _check(self, other):
        if type(other) is not type(self) or other.grid != self.grid:
            raise FieldError(_error.Type, "%s and %s" %
                             (type(self).__name__, type(other).__name__))

    def __add__(self, other):
        self._check(other)
        return type(self)(self.grid, self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.grid, self.data - other.data)

    def __neg__(self):
        return type(self)(self.grid, -self.data)

    def __mul__(self, other):
        if isinstance(other, _Field):
            return NotImplemented
        return type(self)(self.grid, self.data * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Field):
            return NotImplemented
        return type(self)(self.grid, self.data / other)

    # norms and checks

    def _componentwise(self, values):
        values = np.asarray(values)
        if self._weights is None:
            return float(values.sum())
        w = np.asarray(self._weights, dtype=float)
        return float((values * w).sum())

    def inner(self, other):
        """ L2 pairing over the domain (full-tensor component sum). """
        self._check(other)
        prod = self.data * other.data
        axes = tuple(range(len(self._cshape)))
        per = prod.sum(axis=(-2, -1)) * self.grid.dx ** 2
        if not axes:
            return float(per)
        return self._componentwise(per)

    def l2(self):
        return float(np.sqrt(max(self.inner(self), 0.0)))

    def max_abs(self):
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def is_finite(self):
        return bool(np.all(np.isfinite(self.data)))

    def check_finite(self, name):
        if not self.is_finite():
            raise FieldError(_error.NonFinite, name)
        return self


class ScalarField(_Field):

    __slots__ = ()

    def mean(self):
        return float(self.data.mean())


class VectorField(_Field):

    __slots__ = ()
    _cshape = (2,)
    _weights = (1.0, 1.0)

    def magnitude(self):
        return np.hypot(self.data[0], self.data[1])


class SymTensorField(_Field):

    """ Symmetric 2x2 field stored as (V11, V12, V22). """

    __slots__ = ()
    _cshape = (3,)
    _weights = (1.0, 2.0, 1.0)

    @classmethod
    def from_full(cls, grid, m):
        """ Build from a (2, 2, n, n) array, averaging the off-diagonal. """
        m = np.asarray(m, dtype=float)
        return cls(grid, np.stack((m[0, 0], 0.5 * (m[0, 1] + m[1, 0]),
                                   m[1, 1])))

    def full(self):
        a, b, c = self.data
        return np.array([[a, b], [b, c]])

    def trace(self):
        return self.data[0] + self.data[2]

    def det(self):
        a, b, c = self.data
        return a * c - b * b


class Tensor2Field(_Field):

    """ General 2x2 field; data[i, j] is the (i, j) entry. """

    __slots__ = ()
    _cshape = (2, 2)

    @classmethod
    def identity(cls, grid):
        data = np.zeros((2, 2) + grid.shape)
        data[0, 0] = 1.0
        data[1, 1] = 1.0
        return cls(grid, data)

    def transpose(self):
        return Tensor2Field(self.grid, self.data.swapaxes(0, 1).copy())

    def trace(self):
        return self.data[0, 0] + self.data[1, 1]

    def det(self):
        d = self.data
        return d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]
