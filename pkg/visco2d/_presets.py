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

""" Acceptance experiments.

registerPreset -- add an experiment to the registry
execute_preset -- run an experiment, write its report, return an exit code

Every experiment returns a list of Criterion records. The report has
one "<PASS|FAIL> <name>: value=<v> bound=<b>" line per criterion.

"""
import logging
import math
import os
import sys
from collections import namedtuple

import numpy as np

from visco2d import (PresetError, IntegrationError, TensorError, ModelError,
                     InitError)
from visco2d._grid import make_grid
from visco2d._fields import SymTensorField, Tensor2Field
from visco2d._tensor import (polar_decompose_left, compose_from_strain_angle,
                             sqrt_spd2, rotation, _matmul)
from visco2d._models import hodge_residual, rhs_strain, rhs_rotstrain
from visco2d._spectral import laplacian
from visco2d._initdata import initial_states
from visco2d._integrator import step
from visco2d._diagnostics import (energy_law_residual, theorem_certificate,
                                  u_balance, pressure_gap)
from visco2d._config import RunConfig, init_recipe, scheme_spec
from visco2d._Simulation import run_simulation
from visco2d.debug import version_lines

logger = logging.getLogger(__name__)


class _error:
    pass


_error.Unknown = "unknown preset"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3

_presets = {}

preset = namedtuple('preset', 'name func description')

Criterion = namedtuple("Criterion", "name value bound passed")

# differences below this are round-off; their convergence rate is moot
FLOOR = 1e-12

EPS = np.finfo(float).eps

# derivatives carried by each constraint residual
_ORDERS = {"detIpV": 0, "trdet": 0, "compat": 1, "newid": 2}


def registerPreset(name=None, func=None, description=""):
    if not isinstance(name, str) or (name.strip() == ""):
        raise ValueError("Invalid preset name")
    if not callable(func):
        raise ValueError("Invalid preset function for %s" % name)
    _presets[name] = preset(name, func, description)


def upper(name, value, bound):
    return Criterion(name, float(value), bound, bool(value <= bound))


def lower(name, value, bound):
    return Criterion(name, float(value), bound, bool(value >= bound))


def rate(coarse, fine, floor=FLOOR):
    """ log2(coarse/fine); inf when both errors sit at the round-off floor. """
    if coarse <= floor and fine <= floor:
        return math.inf
    if fine <= 0:
        return math.inf
    return math.log2(coarse / fine)


def roundoff_floor(n, order):
    """ Round-off level of a residual with order derivatives on an n grid. """
    return max(FLOOR, 1000 * EPS * float(n) ** order)


def within(name, value, lo, hi):
    ok = math.isinf(value) or lo <= value <= hi
    return Criterion(name, float(value), "[%g, %g]" % (lo, hi), ok)


def _random_deformations(rng, count, unimodular=False):
    phi = rng.uniform(-math.pi, math.pi, count)
    psi = rng.uniform(-math.pi, math.pi, count)
    s1 = rng.uniform(0.7, 1.4, count)
    s2 = 1.0 / s1 if unimodular else rng.uniform(0.7, 1.4, count)
    stretch = np.zeros((2, 2, count))
    stretch[0, 0] = s1
    stretch[1, 1] = s2
    return _matmul(_matmul(rotation(phi), stretch), rotation(psi))


def _gap_V(oldroyd, rotstrain):
    V = polar_decompose_left(oldroyd.F.data).V
    return float(np.max(np.abs(rotstrain.V.full() - V)))


def _gap_theta(oldroyd, rotstrain):
    theta = polar_decompose_left(oldroyd.F.data).theta
    d = np.mod(rotstrain.theta.data - theta + math.pi, 2 * math.pi) - math.pi
    return float(np.max(np.abs(d)))


# presets

def identities(cfg):
    """ Exact identities, constraint propagation and pressure consistency. """
    rng = np.random.default_rng(cfg.seed)
    grid = make_grid(cfg.n, cfg.length)
    worst = 0.0
    for i in range(100):
        V = SymTensorField.random(grid, rng, kmax=min(8, grid.n // 3))
        scale = laplacian(Tensor2Field(grid, V.full())).l2()
        worst = max(worst, hodge_residual(V) / scale)
    out = [upper("hodge_identity", worst, 1e-12)]

    F = _random_deformations(rng, 1000)
    parts = polar_decompose_left(F)
    back = compose_from_strain_angle(parts.V, parts.theta)
    out.append(upper("polar_round_trip", np.max(np.abs(back - F)), 1e-12))
    M = _matmul(F, F.swapaxes(0, 1))
    w, q = np.linalg.eigh(np.moveaxis(M, -1, 0))
    oracle = np.einsum("pik,pk,pjk->ijp", q, np.sqrt(w), q)
    out.append(upper("sqrt_spd2_oracle", np.max(np.abs(sqrt_spd2(M) - oracle)),
                     1e-12))
    V = polar_decompose_left(_random_deformations(rng, 1000, True)).V
    trdet = np.abs(V[0, 0] + V[1, 1] + V[0, 0] * V[1, 1] - V[0, 1] * V[1, 0])
    out.append(upper("trace_determinant", np.max(trdet), 1e-12))

    gaps = []

    def monitor(name, state, rec):
        gap, vnorm = pressure_gap(state)
        gaps.append((gap, 10 * rec.residuals.newid * max(vnorm, 1.0) + FLOOR))

    traj = run_simulation(cfg._replace(formulation="rotstrain"),
                          monitor=monitor)
    series = traj.series()
    first = series[0].residuals
    for key in ("detIpV", "trdet", "compat", "newid"):
        out.append(upper("initial_" + key, getattr(first, key), 1e-6))
        out.append(upper("run_" + key,
                         max(getattr(r.residuals, key) for r in series), 1e-5))
    excess = max(g - b for g, b in gaps)
    out.append(upper("pressure_consistency", excess, 0.0))
    return out


def equivalence(cfg):
    """ Deformation and rotation-strain runs agree at 0.25, 0.5 and 1. """
    checkpoints = [t for t in (0.25, 0.5, 1.0) if t <= cfg.t_final + 1e-12]
    if not checkpoints:
        checkpoints = [cfg.t_final]

    def gaps(c, trace):
        states = {}

        def monitor(name, state, rec):
            for t in checkpoints:
                if abs(rec.t - t) <= 1e-9:
                    states[(t, name)] = state

        run_simulation(c._replace(formulation="both", record_every=1,
                                  t_final=checkpoints[-1]),
                       trace=trace, monitor=monitor)
        return [(t, _gap_V(states[(t, "oldroyd")], states[(t, "rotstrain")]),
                 _gap_theta(states[(t, "oldroyd")], states[(t, "rotstrain")]))
                for t in checkpoints]

    coarse = gaps(cfg, True)
    out = []
    for t, gv, gt in coarse:
        out.append(upper("V_gap_t%g" % t, gv, 1e-4))
        out.append(upper("theta_gap_t%g" % t, gt, 1e-4))
    fine = gaps(cfg._replace(n=2 * cfg.n, dt=0.5 * cfg.dt), False)
    out.append(lower("V_gap_refinement_rate", rate(coarse[-1][1], fine[-1][1]),
                     3.0))
    return out


def energy_law(cfg):
    """ Energy law defect, its convergence, and monotone energy. """
    formulation = "strain" if cfg.formulation == "strain" else "rotstrain"
    c = cfg._replace(formulation=formulation)
    series = run_simulation(c).series()
    r1 = energy_law_residual(series, cfg.mu)
    cert = theorem_certificate(series, mu=cfg.mu)
    r2 = energy_law_residual(run_simulation(c._replace(dt=0.5 * cfg.dt),
                                            trace=False).series(), cfg.mu)
    return [upper("energy_law_residual", r1, 1e-6),
            lower("energy_law_rate", rate(r1, r2), 3.0),
            upper("energy_increase", cert.max_energy_increase,
                  1e-10 * abs(series[0].E_basic))]


def _advance(states, rhs, mu, scheme, h, t_end):
    s = states
    nsteps = int(round(t_end / h))
    for i in range(nsteps):
        s = step(s, rhs, mu, scheme, dt=h, step_index=i)
    return s


def refinement(cfg):
    """ Integrator order, U-balance order and constraint convergence. """
    grid = make_grid(cfg.n, cfg.length)
    _, strain0, rot0 = initial_states(grid, init_recipe(cfg))
    scheme = scheme_spec(cfg)
    out = []
    finals = [_advance(rot0, rhs_rotstrain, cfg.mu, scheme, h, 0.1)
              for h in (0.02, 0.01, 0.005)]
    for key in ("u", "V"):
        e1 = (getattr(finals[0], key) - getattr(finals[1], key)).l2()
        e2 = (getattr(finals[1], key) - getattr(finals[2], key)).l2()
        out.append(within("order_" + key, rate(e1, e2), 3.5, 4.5))

    residuals = []
    for h in (0.02, 0.01):
        s1 = step(strain0, rhs_strain, cfg.mu, scheme, dt=h)
        s2 = step(s1, rhs_strain, cfg.mu, scheme, dt=h)
        report = u_balance((strain0, s1, s2), (0.0, h, 2 * h), cfg.mu)
        residuals.append(report.residual)
    ratio = (math.inf if residuals[1] <= FLOOR else
             residuals[0] / residuals[1])
    out.append(lower("u_balance_ratio", ratio, 8.0))

    worst = []
    for n, dt, warm in ((cfg.n, 2 * cfg.dt, 0.02), (2 * cfg.n, cfg.dt, 0.01)):
        c = cfg._replace(n=n, dt=dt, t_final=0.1, formulation="rotstrain",
                         record_every=10)
        g = make_grid(n, cfg.length)
        states = initial_states(g, init_recipe(c), warm_dt=warm)
        series = run_simulation(c, states=states, trace=False).series()
        worst.append(dict((key, max(getattr(r.residuals, key) for r in series))
                          for key in ("detIpV", "trdet", "compat", "newid")))
    for key in ("detIpV", "trdet", "compat", "newid"):
        floor = roundoff_floor(2 * cfg.n, _ORDERS[key])
        out.append(lower("constraint_rate_" + key,
                         rate(worst[0][key], worst[1][key], floor), 2.0))
    return out


_HALF = 4.0
_FULL = 8.0


def theorem(cfg):
    """ Boundedness and saturation of the dissipation integrals. """
    c = cfg._replace(formulation="rotstrain", t_final=_FULL)
    series = run_simulation(c).series()
    cert = theorem_certificate(series, mu=cfg.mu)
    half = min(series, key=lambda r: abs(r.t - _HALF)).accumulators
    one = min(series, key=lambda r: abs(r.t - 1.0))
    out = [upper("rho_sup", cert.rho_sup, 10.0),
           upper("energy_at_1_over_initial", one.E_basic / series[0].E_basic
                 if series[0].E_basic else 1.0, 1.0 - 1e-12)]
    full = cert.accumulators
    for key in ("gradu_h2", "deltaU_h1", "divV_h1"):
        a4, a8 = getattr(half, key), getattr(full, key)
        change = (a8 - a4) / a8 if a8 > 0 else 0.0
        out.append(upper("saturation_" + key, change, 0.05))
    out.append(Criterion("energy_nonincreasing", cert.max_energy_increase,
                         "slack", cert.energy_nonincreasing))
    out.append(Criterion("divV_identity", float(cert.divV_identity_ok), 1.0,
                         cert.divV_identity_ok))
    return out


registerPreset("identities", identities,
               "exact identities, constraint propagation, pressure forms")
registerPreset("equivalence", equivalence,
               "deformation versus rotation-strain formulation")
registerPreset("energy_law", energy_law, "basic energy law and its order")
registerPreset("refinement", refinement,
               "time integration order, U balance, constraint convergence")
registerPreset("theorem", theorem,
               "boundedness and saturation of the dissipation integrals")


def format_report(name, criteria, verdict):
    lines = version_lines() + ["", "preset %s" % name]
    for c in criteria:
        bound = c.bound if isinstance(c.bound, str) else "%.6g" % c.bound
        lines.append("%s %s: value=%.6g bound=%s" %
                     ("PASS" if c.passed else "FAIL", c.name, c.value, bound))
    lines.append(verdict)
    return "\n".join(lines) + "\n"


def execute_preset(name, config=None):
    """ Run the named preset and return the exit code.

    0 -- every criterion passed
    1 -- some criterion failed (the first one is logged), or the run
         asked for hyperviscosity, which disqualifies it
    3 -- numerical instability

    Unknown names raise PresetError; configuration problems raise
    ConfigError.
    """
    if name not in _presets:
        raise PresetError(_error.Unknown, "%s (known: %s)" %
                          (name, ", ".join(sorted(_presets))))
    cfg = config if config is not None else RunConfig(preset=name)
    cfg = cfg._replace(preset=name)
    p = _presets[name]
    logger.info("preset %s: %s", name, p.description)
    if cfg.hyperviscosity > 0:
        # stabilized runs do not count
        criteria = [Criterion("stabilizer_off", cfg.hyperviscosity, 0.0,
                              False)]
    else:
        try:
            criteria = p.func(cfg)
        except (IntegrationError, TensorError, ModelError, InitError) as e:
            logger.error("preset %s aborted: %s", name, e)
            _write_report(cfg, name,
                          format_report(name, [], "UNSTABLE: %s" % e))
            return EXIT_UNSTABLE
    failed = [c for c in criteria if not c.passed]
    if failed:
        verdict = "FAILED (first failed criterion: %s)" % failed[0].name
        logger.error("preset %s failed at %s", name, failed[0].name)
    else:
        verdict = "PASSED"
    _write_report(cfg, name, format_report(name, criteria, verdict))
    if failed:
        print("Preset %s failed" % name, file=sys.stderr)
        return EXIT_FAIL
    print("Preset %s succeeded" % name, file=sys.stderr)
    return EXIT_PASS


def _write_report(cfg, name, text):
    if not os.path.isdir(cfg.output_dir):
        os.makedirs(cfg.output_dir)
    with open(os.path.join(cfg.output_dir, "report_%s.txt" % name), "w") as f:
        f.write(text)
