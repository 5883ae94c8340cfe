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

""" Run the unit tests for Simulation """
import os

import numpy as np
import pytest

from visco2d import (Simulation, run_simulation, RunConfig, IntegrationError,
                     ModelError, Error, make_grid, initial_states, InitRecipe)
from visco2d._Simulation import _error
from visco2d._traceSeries import read_series, read_snapshot
from helpers import raises_kind

path = os.path


def small(tmp_path, **kw):
    values = dict(n=16, dt=1e-3, t_final=0.01, init="trivial",
                  formulation="rotstrain", output_dir=str(tmp_path))
    values.update(kw)
    return RunConfig(**values)


class TestRun:

    def testEquilibrium(self, tmp_path):
        traj = run_simulation(small(tmp_path))
        assert traj.nsteps == 10
        series = traj.series()
        assert len(series) == 11
        assert series[-1].t == pytest.approx(0.01, abs=1e-15)
        for rec in series:
            assert rec.E_basic == 0.0
        for f in traj.final():
            assert f.max_abs() == 0.0
        data = read_series(traj.paths["rotstrain"])
        assert len(data["t"]) == 11

    def testNoSteps(self, tmp_path):
        traj = run_simulation(small(tmp_path, t_final=0.0))
        assert traj.nsteps == 0
        assert len(traj.series()) == 1

    def testRecordEvery(self, tmp_path):
        traj = run_simulation(small(tmp_path, record_every=4), trace=False)
        times = [r.t for r in traj.series()]
        assert times == pytest.approx([0.0, 0.004, 0.008, 0.01], abs=1e-15)
        assert traj.paths == {}

    def testBoth(self, tmp_path):
        traj = run_simulation(small(tmp_path, formulation="both",
                                    init="taylor_green", amplitude=0.1))
        assert sorted(traj.records) == ["oldroyd", "rotstrain"]
        assert traj.primary == "rotstrain"
        assert sorted(path.basename(p) for p in traj.paths.values()) == \
            ["series_oldroyd.csv", "series_rotstrain.csv"]
        a = traj.series("oldroyd")[-1]
        b = traj.series("rotstrain")[-1]
        assert a.E_basic == pytest.approx(b.E_basic, rel=1e-6)

    def testDeterministic(self, tmp_path):
        cfg = small(tmp_path, init="warm_start", amplitude=0.1, t_final=0.005)
        a = run_simulation(cfg, trace=False).series()
        b = run_simulation(cfg, trace=False).series()
        assert [r.E_basic for r in a] == [r.E_basic for r in b]
        assert [r.residuals for r in a] == [r.residuals for r in b]

    def testEnergyDecays(self, tmp_path):
        cfg = small(tmp_path, init="taylor_green", amplitude=0.2, t_final=0.05,
                    dt=5e-3)
        energy = [r.E_basic for r in run_simulation(cfg, trace=False).series()]
        assert all(np.diff(energy) <= 1e-12)

    def testAdaptive(self, tmp_path):
        cfg = small(tmp_path, adaptive=True, init="taylor_green",
                    amplitude=0.5, dt=0.1, t_final=0.2)
        traj = run_simulation(cfg, trace=False)
        assert traj.series()[-1].t == pytest.approx(0.2, abs=1e-12)
        # c_el = 1 caps the step at cfl_safety * dx
        assert traj.nsteps >= int(0.2 / (0.5 * 2 * np.pi / 16))

    def testMatchedStates(self, tmp_path):
        cfg = small(tmp_path, init="taylor_green", amplitude=0.1)
        grid = make_grid(16)
        states = initial_states(grid, InitRecipe(kind="taylor_green",
                                                 amplitude=0.1))
        a = run_simulation(cfg, states=states, trace=False)
        b = run_simulation(cfg, trace=False)
        assert np.array_equal(a.final().u.data, b.final().u.data)

    def testSnapshots(self, tmp_path):
        traj = run_simulation(small(tmp_path, snapshot_every=5))
        names = sorted(n for n in os.listdir(str(tmp_path))
                       if n.startswith("snap_"))
        assert names == ["snap_rotstrain_000005.bin",
                         "snap_rotstrain_000010.bin"]
        header, fields = read_snapshot(path.join(str(tmp_path), names[-1]))
        assert header["t"] == pytest.approx(0.01)
        assert traj.nsteps == 10

    def testMonitor(self, tmp_path):
        seen = []

        def monitor(name, state, rec):
            seen.append((name, rec.t))

        run_simulation(small(tmp_path, formulation="both"), trace=False,
                       monitor=monitor)
        assert len(seen) == 22
        assert seen[0] == ("oldroyd", 0.0)


class TestSimulationErrors:

    def testFinished(self, tmp_path):
        sim = Simulation(small(tmp_path), trace=False)
        sim.run()
        with raises_kind(Error, _error.Finished):
            sim.run()

    def testBreakdown(self, tmp_path, monkeypatch):
        def breaks(*args, **kw):
            raise ModelError("non-finite intermediate", "du")

        monkeypatch.setattr("visco2d._Simulation.step", breaks)
        sim = Simulation(small(tmp_path), trace=False)
        try:
            sim.run()
        except IntegrationError as e:
            assert e.kind == _error.Breakdown
            assert e.step == 0
            assert e.last_record is sim.records["rotstrain"][0]
        else:
            pytest.fail("DID NOT RAISE")

    def testFilesClosed(self, tmp_path, monkeypatch):
        def breaks(*args, **kw):
            raise IntegrationError("non-finite state after step", step=0)

        monkeypatch.setattr("visco2d._Simulation.step", breaks)
        with pytest.raises(IntegrationError):
            run_simulation(small(tmp_path))
        data = read_series(path.join(str(tmp_path), "series_rotstrain.csv"))
        assert len(data["t"]) == 1
