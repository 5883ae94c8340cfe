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

""" Module that provides the Simulation class """
import logging
import math
import os

from visco2d import (IntegrationError, Error, TensorError, ModelError,
                     FieldError)
from visco2d._grid import make_grid
from visco2d._models import rhs_oldroyd, rhs_strain, rhs_rotstrain
from visco2d._initdata import initial_states
from visco2d._integrator import step, cfl_dt, check_scheme
from visco2d._diagnostics import DissipationLedger, record
from visco2d._config import validate_config, init_recipe, scheme_spec
from visco2d._traceSeries import traceSeries, write_snapshot

logger = logging.getLogger(__name__)


class _error:
    pass


_error.Finished = "Simulation has already finished"
_error.Breakdown = "model breakdown during step"

# formulation -> (index into the matched initial states, rhs)
_formulations = {"oldroyd": (0, rhs_oldroyd),
                 "strain": (1, rhs_strain),
                 "rotstrain": (2, rhs_rotstrain)}


def _members(formulation):
    if formulation == "both":
        return ("oldroyd", "rotstrain")
    return (formulation,)


class Trajectory(object):

    """ Result of a run.

    Attributes:
    config -- the RunConfig
    states -- formulation -> final state
    records -- formulation -> list of DiagnosticsRecord
    paths -- formulation -> CSV path (empty when not traced)
    nsteps -- accepted steps

    """

    def __init__(self, config, states, records, paths, nsteps):
        self.config = config
        self.states = states
        self.records = records
        self.paths = paths
        self.nsteps = nsteps

    @property
    def primary(self):
        return _members(self.config.formulation)[-1]

    def series(self, formulation=None):
        return self.records[formulation or self.primary]

    def final(self, formulation=None):
        return self.states[formulation or self.primary]


class Simulation(object):

    """ Simulation class.

    Methods:
    run -- integrate up to the configured t_final

    """

    def __init__(self, config, states=None, trace=True, monitor=None):
        """ Construct a simulation object.

        config -- RunConfig
        states -- matched (oldroyd, strain, rotstrain) initial states;
                  default from the config's initial data recipe
        trace -- write the CSV series and snapshots to config.output_dir
        monitor -- called as monitor(formulation, state, record) after
                   every record

        """
        self.config = validate_config(config)
        self.scheme = scheme_spec(config)
        check_scheme(self.scheme)
        self.grid = make_grid(config.n, config.length)
        if states is None:
            states = initial_states(self.grid, init_recipe(config))
        self.t = 0.0
        self.nsteps = 0
        self.states = {}
        self.ledgers = {}
        self.records = {}
        self._writers = {}
        for name in _members(config.formulation):
            self.states[name] = states[_formulations[name][0]]
            self.ledgers[name] = DissipationLedger()
            self.records[name] = []
            if trace:
                self._writers[name] = traceSeries(name, config.output_dir)
        self._trace = trace
        self._monitor = monitor
        self._finished = False
        for name in self.states:
            self._record(name)

    def _record(self, name):
        rec = record(self.states[name], self.t, self.ledgers[name],
                     self.config.mu)
        self.records[name].append(rec)
        if name in self._writers:
            self._writers[name].write(rec)
        if self._monitor is not None:
            self._monitor(name, self.states[name], rec)
        return rec

    def _snapshot(self):
        directory = self.config.output_dir
        for name, s in self.states.items():
            filepath = os.path.join(directory, "snap_%s_%06d.bin" %
                                    (name, self.nsteps))
            write_snapshot(filepath, s, self.t, name)

    def _finalize(self):
        for w in self._writers.values():
            w.close()
        self._finished = True

    def _dt(self):
        cfg = self.config
        if not self.scheme.adaptive:
            return self.scheme.dt
        return min(cfl_dt(s, self.grid, cfg.cfl_safety, self.scheme.dt)
                   for s in self.states.values())

    def run(self):
        """ Run the simulation up to t_final and return a Trajectory. """
        if self._finished:
            raise Error(_error.Finished)
        cfg = self.config
        logger.info("run: %s n=%d mu=%g dt=%g t_final=%g", cfg.formulation,
                    cfg.n, cfg.mu, cfg.dt, cfg.t_final)
        # fixed steps land on k*dt exactly
        fixed = None
        if not self.scheme.adaptive:
            fixed = int(math.ceil(cfg.t_final / self.scheme.dt - 1e-9))
        try:
            while True:
                if fixed is not None:
                    if self.nsteps >= fixed:
                        break
                    t_next = min((self.nsteps + 1) * self.scheme.dt, cfg.t_final)
                    dt = t_next - self.t
                else:
                    remaining = cfg.t_final - self.t
                    if remaining <= 1e-12 * max(1.0, cfg.t_final):
                        break
                    dt = min(self._dt(), remaining)
                    t_next = self.t + dt
                for name, s in self.states.items():
                    rhs = _formulations[name][1]
                    try:
                        self.states[name] = step(s, rhs, cfg.mu, self.scheme,
                                                 dt=dt, step_index=self.nsteps)
                    except IntegrationError as e:
                        e.last_record = self.records[name][-1]
                        raise
                    except (TensorError, ModelError, FieldError) as e:
                        raise IntegrationError(_error.Breakdown,
                                               "%s: %s" % (name, e),
                                               step=self.nsteps,
                                               last_record=self.records[name][-1])
                self.t = t_next
                self.nsteps += 1
                last = fixed is not None and self.nsteps == fixed
                last = last or (fixed is None and
                                cfg.t_final - self.t <= 1e-12 * max(1.0, cfg.t_final))
                if self.nsteps % cfg.record_every == 0 or last:
                    for name in self.states:
                        self._record(name)
                if (self._trace and cfg.snapshot_every and
                        self.nsteps % cfg.snapshot_every == 0):
                    self._snapshot()
                logger.debug("step %d t=%.6g dt=%.3g", self.nsteps, self.t, dt)
        finally:
            self._finalize()
        logger.info("run finished: %d steps, t=%g", self.nsteps, self.t)
        paths = dict((name, w.path) for name, w in self._writers.items())
        return Trajectory(cfg, dict(self.states), self.records, paths,
                          self.nsteps)


def run_simulation(config, states=None, trace=True, monitor=None):
    """ Integrate config to t_final; see Simulation. """
    return Simulation(config, states=states, trace=trace,
                      monitor=monitor).run()
