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

""" Run the unit tests for traceSeries and the snapshot files """
import os

import numpy as np
import pytest

from visco2d import (make_grid, TraceError, VectorField, SymTensorField,
                     ScalarField, Tensor2Field, RotStrainState, OldroydState,
                     DissipationLedger, record, traceSeries, write_snapshot,
                     read_snapshot)
from visco2d._traceSeries import COLUMNS, read_series, series_row, _error
from helpers import raises_kind, random_field

rng = np.random.default_rng(1)  # random, but deterministic
path = os.path


def state(grid):
    return RotStrainState(random_field(grid, VectorField, rng, kmax=3),
                          random_field(grid, SymTensorField, rng, kmax=3,
                                       scale=0.1),
                          random_field(grid, ScalarField, rng, kmax=3))


def records(grid, count=3):
    ledger = DissipationLedger()
    s = state(grid)
    return [record(s, 0.1 * i, ledger) for i in range(count)]


class TestTraceSeries:

    def testColumns(self):
        assert COLUMNS == ("t", "E_basic", "E_alt", "gradu_l2sq", "h2_u",
                           "h2_V", "deltaU_l2sq", "detIpV", "trdet", "compat",
                           "newid", "detF", "divFT", "acc_gradu_h2",
                           "acc_deltaU_h1", "acc_divV_h1")

    def testWrite(self, tmp_path):
        grid = make_grid(16)
        recs = records(grid)
        w = traceSeries("rotstrain", str(tmp_path))
        for r in recs:
            w.write(r)
        w.close()
        assert path.basename(w.path) == "series_rotstrain.csv"
        with open(w.path) as f:
            assert f.readline().strip() == ",".join(COLUMNS)
        data = read_series(w.path)
        assert list(data) == list(COLUMNS)
        assert len(data["t"]) == 3
        # %.17g keeps every bit
        assert data["E_basic"][1] == recs[1].E_basic
        assert data["acc_gradu_h2"][2] == recs[2].accumulators.gradu_h2

    def testMissingResidual(self):
        grid = make_grid(16)
        s = OldroydState(VectorField.zeros(grid), Tensor2Field.identity(grid))
        rec = record(s, 0.0, DissipationLedger())
        row = series_row(rec)
        assert row[COLUMNS.index("compat")] == "nan"
        assert row[COLUMNS.index("detF")] == "0"

    def testDirectoryCreated(self, tmp_path):
        directory = str(tmp_path / "a" / "b")
        w = traceSeries("strain", directory)
        w.close()
        assert path.isfile(path.join(directory, "series_strain.csv"))

    def testBackup(self, tmp_path):
        for i in range(2):
            w = traceSeries("oldroyd", str(tmp_path))
            w.close()
        names = os.listdir(str(tmp_path))
        assert "series_oldroyd.csv" in names
        assert len(names) == 2

    def testNoBackup(self, tmp_path):
        traceSeries.tracebackup = False
        try:
            for i in range(2):
                traceSeries("oldroyd", str(tmp_path)).close()
        finally:
            traceSeries.tracebackup = True
        assert os.listdir(str(tmp_path)) == ["series_oldroyd.csv"]

    def testName(self, tmp_path):
        traceSeries.name = "run7"
        try:
            w = traceSeries("both", str(tmp_path))
            w.close()
        finally:
            traceSeries.name = None
        assert path.basename(w.path) == "run7_both.csv"


class TestSnapshot:

    def testRoundTrip(self, tmp_path):
        grid = make_grid(16)
        s = state(grid)
        filepath = str(tmp_path / "snap.bin")
        write_snapshot(filepath, s, 0.25, "rotstrain")
        header, fields = read_snapshot(filepath)
        assert header["n"] == 16
        assert header["length"] == grid.length
        assert header["t"] == 0.25
        assert header["formulation"] == "rotstrain"
        assert header["fields"] == ["u1", "u2", "V11", "V12", "V22", "theta"]
        assert np.array_equal(fields["u2"], s.u.data[1])
        assert np.array_equal(fields["V12"], s.V.data[1])
        assert np.array_equal(fields["theta"], s.theta.data)

    def testDeformation(self, tmp_path):
        grid = make_grid(8)
        s = OldroydState(VectorField.zeros(grid), Tensor2Field.identity(grid))
        filepath = str(tmp_path / "snap.bin")
        write_snapshot(filepath, s, 0.0, "oldroyd")
        header, fields = read_snapshot(filepath)
        assert header["fields"] == ["u1", "u2", "F11", "F12", "F21", "F22"]
        assert np.all(fields["F22"] == 1.0)
        assert np.all(fields["F21"] == 0.0)

    def testMagic(self, tmp_path):
        filepath = str(tmp_path / "snap.bin")
        with open(filepath, "wb") as f:
            f.write(b"HELLO\n")
        with raises_kind(TraceError, _error.Magic):
            read_snapshot(filepath)

    def testTruncated(self, tmp_path):
        grid = make_grid(8)
        filepath = str(tmp_path / "snap.bin")
        write_snapshot(filepath, state(grid), 0.0, "rotstrain")
        with open(filepath, "rb") as f:
            blob = f.read()
        with open(filepath, "wb") as f:
            f.write(blob[:-8])
        with raises_kind(TraceError, _error.Truncated):
            read_snapshot(filepath)

    def testHeader(self, tmp_path):
        filepath = str(tmp_path / "snap.bin")
        with open(filepath, "wb") as f:
            f.write(b"VISCO2D1\nn = 8\n")
        with raises_kind(TraceError, _error.Header):
            read_snapshot(filepath)
