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

""" Module that provides the periodic collocation grid.

This module provides the following objects:
Grid -- square periodic grid with wavenumber tables and transforms
make_grid -- validated Grid constructor

Arrays on the grid are indexed [i, j] with x1 = i*dx and x2 = j*dx.
The real transforms run along the last axis, so spectral arrays have
shape (n, n//2 + 1).

"""
import logging
import math

import numpy as np
import scipy.fft

from visco2d import GridError

logger = logging.getLogger(__name__)


class _error:
    pass


_error.OddSize = "number of points per axis should be even"
_error.TooSmall = "number of points per axis should be at least 8"
_error.SizeType = "number of points per axis should be an integer"
_error.Length = "domain length should be positive and finite"

_MIN_POINTS = 8


class Grid(object):

    """ Periodic square grid on [0, length)^2.

    Attributes:
    n -- points per axis
    length -- domain side
    dx -- grid spacing
    wavenumbers -- integer frequencies {-n/2, ..., n/2-1} per axis
    dealias_mask -- boolean table over the half spectrum (2/3 rule)
    k1, k2 -- derivative symbols (physical units, Nyquist removed)
    ksq -- k1**2 + k2**2, the symbol of -Laplacian
    workers -- worker threads handed to scipy.fft

    """

    __slots__ = ("n", "length", "dx", "wavenumbers", "dealias_mask",
                 "k1", "k2", "ksq", "workers", "_weights", "_x")

    def __init__(self, n, length, workers=None):
        self.n = n
        self.length = float(length)
        self.dx = self.length / n
        self.workers = workers
        self.wavenumbers = np.fft.fftfreq(n, 1.0 / n).round().astype(int)
        m1 = self.wavenumbers[:, None]
        m2 = np.fft.rfftfreq(n, 1.0 / n).round().astype(int)[None, :]
        cutoff = n // 3
        self.dealias_mask = (np.abs(m1) <= cutoff) & (np.abs(m2) <= cutoff)
        scale = 2.0 * math.pi / self.length
        # the Nyquist line has no real derivative
        self.k1 = np.where(np.abs(m1) == n // 2, 0, m1) * scale
        self.k2 = np.where(m2 == n // 2, 0, m2) * scale
        self.ksq = self.k1 ** 2 + self.k2 ** 2
        weights = np.full((1, n // 2 + 1), 2.0)
        weights[0, 0] = 1.0
        weights[0, -1] = 1.0
        self._weights = weights
        self._x = None
        logger.debug("grid n=%d length=%g, dealias cutoff %d", n,
                     self.length, cutoff)

    def __repr__(self):
        return "Grid(n=%d, length=%r)" % (self.n, self.length)

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.n == other.n and self.length == other.length

    def __hash__(self):
        return hash((self.n, self.length))

    @property
    def shape(self):
        return (self.n, self.n)

    @property
    def spectral_shape(self):
        return (self.n, self.n // 2 + 1)

    @property
    def area(self):
        return self.length ** 2

    def coordinates(self):
        """ Return the (x1, x2) coordinate arrays, indexing='ij'. """
        if self._x is None:
            x = np.arange(self.n) * self.dx
            self._x = np.meshgrid(x, x, indexing="ij")
        return self._x

    def fft(self, a):
        """ Forward real transform over the two trailing axes. """
        return scipy.fft.rfft2(a, axes=(-2, -1), workers=self.workers)

    def ifft(self, ah):
        """ Inverse transform; the output is real (Hermitian symmetric). """
        return scipy.fft.irfft2(ah, s=self.shape, axes=(-2, -1),
                                workers=self.workers)

    def parseval(self, ah, bh):
        """ Integral of a*b over the domain from two half spectra.

        Leading axes are summed as components.
        """
        prod = (ah * np.conj(bh)).real * self._weights
        return float(prod.sum()) * self.area / self.n ** 4

    def quadrature(self, a):
        """ Trapezoidal (spectrally exact) integral of a over the domain. """
        return float(np.sum(a)) * self.dx * self.dx


def make_grid(n, length=2.0 * math.pi, workers=None):
    """ Return a validated Grid.

    n -- even number of points per axis, at least 8
    length -- domain side (default 2*pi)

    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise GridError(_error.SizeType, "got %r" % (n,))
    n = int(n)
    if n < _MIN_POINTS:
        raise GridError(_error.TooSmall, "got %d" % n)
    if n % 2:
        raise GridError(_error.OddSize, "got %d" % n)
    try:
        length = float(length)
    except (TypeError, ValueError):
        raise GridError(_error.Length, "got %r" % (length,))
    if not math.isfinite(length) or length <= 0:
        raise GridError(_error.Length, "got %r" % (length,))
    return Grid(n, length, workers=workers)
