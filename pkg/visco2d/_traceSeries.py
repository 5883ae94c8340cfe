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

""" visco2d series and snapshot persistence.

traceSeries -- opens the CSV diagnostics series of a run
write_snapshot, read_snapshot -- binary field snapshots

CSV columns, in this order:
t, E_basic, E_alt, gradu_l2sq, h2_u, h2_V, deltaU_l2sq, detIpV, trdet,
compat, newid, detF, divFT, acc_gradu_h2, acc_deltaU_h1, acc_divV_h1

"""
import csv
import logging
import os
import shutil

import numpy as np

from visco2d import TraceError

path = os.path
logger = logging.getLogger(__name__)


class _error:
    pass


_error.Magic = "not a visco2d snapshot"
_error.Header = "malformed snapshot header"
_error.Truncated = "snapshot data is truncated"


MAGIC = "VISCO2D1"

COLUMNS = ("t", "E_basic", "E_alt", "gradu_l2sq", "h2_u", "h2_V",
           "deltaU_l2sq", "detIpV", "trdet", "compat", "newid", "detF",
           "divFT", "acc_gradu_h2", "acc_deltaU_h1", "acc_divV_h1")

_COMPONENTS = {"u": ("u1", "u2"),
               "V": ("V11", "V12", "V22"),
               "F": ("F11", "F12", "F21", "F22"),
               "theta": ("theta",)}


def _fmt(value):
    if value is None:
        return "nan"
    return "%.17g" % value


def series_row(rec):
    """ The CSV cells of a DiagnosticsRecord. """
    acc = rec.accumulators
    values = ((rec.t, rec.E_basic, rec.E_alt, rec.gradu_l2sq, rec.h2_u,
               rec.h2_V, rec.deltaU_l2sq) + tuple(rec.residuals) +
              (acc.gradu_h2, acc.deltaU_h1, acc.divV_h1))
    return [_fmt(v) for v in values]


class _SeriesWriter(object):

    __slots__ = ("path", "_file", "_writer")

    def __init__(self, filepath):
        self.path = filepath
        self._file = open(filepath, "w", newline="")
        self._writer = csv.writer(self._file)
        self._writer.writerow(COLUMNS)

    def write(self, rec):
        self._writer.writerow(series_row(rec))

    def flush(self):
        self._file.flush()

    def close(self):
        if not self._file.closed:
            self._file.close()


class _TraceSeriesClass(object):

    """ Opens the diagnostics CSV of one formulation.

    Attributes:
    name -- file stem (default "series")
    directory -- output directory, created on demand
    filename -- full file name overriding name and formulation
    tracebackup -- keep an existing file under a timestamped name

    """

    __slots__ = ("name",
                 "directory",
                 "filename",
                 "tracebackup"
                 )

    def __init__(self):
        self.name = None
        self.directory = None
        self.filename = None
        self.tracebackup = True

    def __call__(self, formulation, directory=None):
        if directory is None:
            directory = self.directory or ''
        name = "series" if self.name is None else str(self.name)
        if self.filename is None:
            filename = "%s_%s.csv" % (name, formulation)
        else:
            filename = str(self.filename)
        if directory and not path.isdir(directory):
            os.makedirs(directory)
        csvpath = path.join(directory, filename)
        if path.exists(csvpath):
            if self.tracebackup:
                backup = csvpath[:-4] + '.' + str(path.getmtime(csvpath)) + '.csv'
                shutil.copyfile(csvpath, backup)
            os.remove(csvpath)
        logger.debug("series of %s traced to %s", formulation, csvpath)
        return _SeriesWriter(csvpath)


traceSeries = _TraceSeriesClass()


def read_series(filepath):
    """ Return the CSV series as a dict column -> float array. """
    with open(filepath, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    data = np.array([[float(x) for x in row] for row in body]).reshape(-1, len(header))
    return dict((name, data[:, i]) for i, name in enumerate(header))


def write_snapshot(filepath, state, t, formulation):
    """ Write state as a text header followed by '<f8' row-major fields. """
    grid = state[0].grid
    names = []
    for field_name in state._fields:
        names.extend(_COMPONENTS[field_name])
    header = [MAGIC,
              "n = %d" % grid.n,
              "length = %r" % grid.length,
              "t = %r" % float(t),
              "formulation = %s" % formulation,
              "fields = %s" % " ".join(names),
              "end"]
    with open(filepath, "wb") as f:
        f.write(("\n".join(header) + "\n").encode("ascii"))
        for field in state:
            data = field.data.reshape((-1,) + grid.shape)
            for component in data:
                f.write(np.ascontiguousarray(component, dtype="<f8").tobytes())


def read_snapshot(filepath):
    """ Return (header, fields) of a snapshot file.

    header -- dict with n, length, t, formulation and the field list
    fields -- dict component name -> (n, n) float array
    """
    with open(filepath, "rb") as f:
        if f.readline().decode("ascii").strip() != MAGIC:
            raise TraceError(_error.Magic, filepath)
        header = {}
        while True:
            line = f.readline().decode("ascii")
            if not line:
                raise TraceError(_error.Header, "missing 'end' line")
            line = line.strip()
            if line == "end":
                break
            key, sep, value = line.partition("=")
            if not sep:
                raise TraceError(_error.Header, repr(line))
            header[key.strip()] = value.strip()
        blob = f.read()
    try:
        n = int(header["n"])
        header["n"] = n
        header["length"] = float(header["length"])
        header["t"] = float(header["t"])
        names = header["fields"].split()
    except (KeyError, ValueError) as e:
        raise TraceError(_error.Header, str(e))
    header["fields"] = names
    size = n * n * 8
    if len(blob) != size * len(names):
        raise TraceError(_error.Truncated, "%d bytes for %d fields" %
                         (len(blob), len(names)))
    fields = {}
    for i, name in enumerate(names):
        fields[name] = np.frombuffer(blob[i * size:(i + 1) * size],
                                     dtype="<f8").reshape(n, n).copy()
    return header, fields
