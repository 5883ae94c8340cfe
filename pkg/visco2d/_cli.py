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

""" Command line entry point.

Exit codes: 0 pass, 1 criterion failure, 2 configuration error,
3 numerical instability.

"""
import argparse
import logging
import sys

from visco2d import (ConfigError, PresetError, IntegrationError, TensorError,
                     ModelError, InitError, GridError)
from visco2d._config import RunConfig, parse_config, validate_config
from visco2d._presets import (execute_preset, EXIT_PASS, EXIT_CONFIG,
                              EXIT_UNSTABLE)
from visco2d._Simulation import run_simulation
from visco2d.debug import print_versions

logger = logging.getLogger("visco2d")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="visco2d",
        description="Pseudo-spectral 2D viscoelastic flow runs and "
                    "identity checks"
    )
    parser.add_argument(
        "--config", metavar="PATH",
        help="run configuration file (key = value lines)"
    )
    parser.add_argument(
        "--preset", metavar="NAME",
        help="acceptance experiment: identities, equivalence, energy_law, "
             "refinement or theorem"
    )
    parser.add_argument("--out-dir", metavar="PATH", help="output directory")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--n", type=int, help="points per axis")
    parser.add_argument("--dt", type=float, help="time step")
    parser.add_argument("--t-final", type=float, help="final time")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="warnings and errors only")
    parser.add_argument("--versions", action="store_true",
                        help="print package and runtime versions and exit")
    return parser


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def load_config(args):
    """ RunConfig from --config (or defaults) with command line overrides. """
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            cfg = parse_config(f.read())
    else:
        cfg = RunConfig()
    overrides = {"output_dir": args.out_dir, "seed": args.seed, "n": args.n,
                 "dt": args.dt, "t_final": args.t_final}
    overrides = dict((k, v) for k, v in overrides.items() if v is not None)
    if args.preset:
        overrides["preset"] = args.preset
    return validate_config(cfg._replace(**overrides))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.versions:
        print_versions()
        return EXIT_PASS
    _configure_logging(args)
    try:
        cfg = load_config(args)
    except (ConfigError, GridError) as e:
        logger.error("configuration error: %s", e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("cannot read configuration: %s", e)
        return EXIT_CONFIG
    if cfg.preset:
        try:
            return execute_preset(cfg.preset, cfg)
        except PresetError as e:
            parser.print_usage(sys.stderr)
            logger.error("%s", e)
            return EXIT_CONFIG
    try:
        traj = run_simulation(cfg)
    except InitError as e:
        logger.error("initial data: %s", e)
        return EXIT_UNSTABLE
    except (IntegrationError, TensorError, ModelError) as e:
        logger.error("numerical instability: %s", e)
        return EXIT_UNSTABLE
    for name, path in sorted(traj.paths.items()):
        logger.info("series %s written to %s", name, path)
    return EXIT_PASS
