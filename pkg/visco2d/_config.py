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

""" Module that provides the run configuration.

RunConfig -- complete description of an experiment
parse_config -- 'key = value' text to a validated RunConfig
format_config -- RunConfig to text that parses back to the same config
validate_config -- checks shared by the parser and the command line

"""
import math
import re
from collections import namedtuple

from visco2d import ConfigError
from visco2d._initdata import InitRecipe, INIT_KINDS
from visco2d._integrator import SchemeSpec, SCHEMES


class _error:
    pass


_error.Syntax = "expected 'key = value'"
_error.UnknownKey = "unknown key"
_error.Duplicate = "duplicated key"
_error.Missing = "missing required key"
_error.Type = "type mismatch"
_error.Value = "invalid value"

FORMULATIONS = ("oldroyd", "strain", "rotstrain", "both")

REQUIRED = ("formulation", "t_final")

RunConfig = namedtuple("RunConfig",
                       "n length mu dt t_final scheme cfl_safety adaptive "
                       "hyperviscosity record_every formulation init amplitude "
                       "warm_time warm_stream seed output_dir snapshot_every "
                       "preset",
                       defaults=(64, 2 * math.pi, 1.0, 1e-3, 1.0, "if_rk4",
                                 0.5, False, 0.0, 1, "rotstrain", "warm_start",
                                 0.05, 0.5, "1 1 0.1", 0, "out", 0, None))

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")

_pi_re = re.compile(r"^([-+]?[0-9.eE+-]*?)\s*\*?\s*pi$")


def _to_float(text):
    text = text.strip()
    m = _pi_re.match(text)
    if m:
        factor = m.group(1)
        return (float(factor) if factor not in ("", "+", "-")
                else float(factor + "1")) * math.pi
    return float(text)


def _to_int(text):
    return int(text.strip())


def _to_bool(text):
    low = text.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(text)


def _to_str(text):
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "'\"":
        text = text[1:-1]
    return text


_converters = {"n": _to_int,
               "length": _to_float,
               "mu": _to_float,
               "dt": _to_float,
               "t_final": _to_float,
               "scheme": _to_str,
               "cfl_safety": _to_float,
               "adaptive": _to_bool,
               "hyperviscosity": _to_float,
               "record_every": _to_int,
               "formulation": _to_str,
               "init": _to_str,
               "amplitude": _to_float,
               "warm_time": _to_float,
               "warm_stream": _to_str,
               "seed": _to_int,
               "output_dir": _to_str,
               "snapshot_every": _to_int,
               "preset": _to_str,
               }


def _fail(key, why, lineno):
    raise ConfigError(_error.Value, "%s: %s" % (key, why), lineno)


def validate_config(cfg, lines=None):
    """ Check value ranges; lines maps keys to line numbers for messages. """
    lines = lines or {}

    def check(key, ok, why):
        if not ok:
            _fail(key, why + ", got %r" % (getattr(cfg, key),), lines.get(key))

    check("n", cfg.n >= 8 and cfg.n % 2 == 0, "should be even and at least 8")
    check("length", math.isfinite(cfg.length) and cfg.length > 0,
          "should be positive")
    check("mu", math.isfinite(cfg.mu) and cfg.mu > 0, "should be positive")
    check("dt", math.isfinite(cfg.dt) and cfg.dt > 0, "should be positive")
    check("t_final", math.isfinite(cfg.t_final) and cfg.t_final >= 0,
          "should be non-negative")
    check("scheme", cfg.scheme in SCHEMES, "should be one of %s" % (SCHEMES,))
    check("cfl_safety", 0 < cfg.cfl_safety <= 1, "should lie in (0, 1]")
    check("hyperviscosity", cfg.hyperviscosity >= 0, "should be non-negative")
    check("record_every", cfg.record_every >= 1, "should be at least 1")
    check("formulation", cfg.formulation in FORMULATIONS,
          "should be one of %s" % (FORMULATIONS,))
    check("init", cfg.init in INIT_KINDS, "should be one of %s" % (INIT_KINDS,))
    check("amplitude", cfg.amplitude >= 0, "should be non-negative")
    check("warm_time", cfg.warm_time >= 0, "should be non-negative")
    check("snapshot_every", cfg.snapshot_every >= 0, "should be non-negative")
    check("output_dir", bool(cfg.output_dir), "should not be empty")
    return cfg


def parse_config(text):
    """ Parse a line oriented 'key = value' file; '#' starts a comment. """
    values = {}
    lines = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(_error.Syntax, repr(line), lineno)
        if key not in _converters:
            raise ConfigError(_error.UnknownKey, key, lineno)
        if key in values:
            raise ConfigError(_error.Duplicate, "%s (first on line %d)" %
                              (key, lines[key]), lineno)
        try:
            values[key] = _converters[key](value)
        except ValueError:
            raise ConfigError(_error.Type, "%s = %s" % (key, value.strip()),
                              lineno)
        lines[key] = lineno
    for key in REQUIRED:
        if key not in values:
            raise ConfigError(_error.Missing, key)
    if values.get("preset") in ("", "none"):
        values["preset"] = None
    return validate_config(RunConfig(**values), lines)


def format_config(cfg):
    """ Render cfg as text; parse_config(format_config(cfg)) == cfg. """
    out = []
    for key, value in zip(cfg._fields, cfg):
        if value is None:
            continue
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        elif isinstance(value, str) and (value != value.strip() or not value):
            value = '"%s"' % value
        out.append("%s = %s" % (key, value))
    return "\n".join(out) + "\n"


def init_recipe(cfg):
    return InitRecipe(cfg.init, cfg.amplitude, cfg.warm_time, cfg.warm_stream,
                      cfg.seed)


def scheme_spec(cfg):
    return SchemeSpec(cfg.scheme, cfg.dt, cfg.cfl_safety, cfg.adaptive,
                      cfg.hyperviscosity)
