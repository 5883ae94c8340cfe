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

""" visco2d package initialization.

This module provides the following visco2d objects:
Grid, make_grid -- periodic collocation grid
ScalarField, VectorField, SymTensorField, Tensor2Field -- real grid fields
derivative, inv_laplacian, leray_project, dealias, sobolev_norm -- spectral
       operators on fields
sqrt_spd2, polar_decompose_left, compose_from_strain_angle,
gamma_coefficient, velocity_split, a_commutator, inv_i_plus_v -- pointwise
       2x2 matrix algebra
OldroydState, StrainState, RotStrainState -- evolvable states
rhs_oldroyd, rhs_strain, rhs_theta, rhs_rotstrain -- right-hand sides
recover_pressure, assemble_f, constraint_residuals, hodge_residual --
       pressure recovery and identity residuals
InitRecipe, taylor_green_velocity, warm_start_deformation,
states_from_deformation, initial_states -- constrained initial data
SchemeSpec, step, cfl_dt -- time stepping
Simulation, run_simulation -- full experiment runs
basic_energy, energy_law_residual, auxiliary_u, u_balance,
theorem_certificate, record -- diagnostics
RunConfig, parse_config, format_config -- run configuration
execute_preset, registerPreset -- acceptance experiments
traceSeries, write_snapshot, read_snapshot -- persistence

"""
__version__ = "0.1"


class Error(Exception):

    def __init__(self, kind, msg="", info=""):
        self.kind = kind
        self.msg = msg
        self.info = info

    def __str__(self):
        s = "%s%s" % (self.info, self.kind)
        if self.msg:
            s += ": %s" % self.msg
        return s


class GridError(Error):
    pass


class FieldError(Error):
    pass


class TensorError(Error):

    def __init__(self, kind, msg="", info="", value=None, location=None):
        Error.__init__(self, kind, msg, info)
        self.value = value
        self.location = location


class ModelError(Error):
    pass


class InitError(Error):
    pass


class IntegrationError(Error):

    def __init__(self, kind, msg="", info="", step=None, field=None,
                 last_record=None):
        Error.__init__(self, kind, msg, info)
        self.step = step
        self.field = field
        self.last_record = last_record


class DiagnosticsError(Error):
    pass


class ConfigError(Error):

    def __init__(self, kind, msg="", lineno=None):
        info = "line %d: " % lineno if lineno is not None else ""
        Error.__init__(self, kind, msg, info)
        self.lineno = lineno


class PresetError(Error):
    pass


class TraceError(Error):
    pass


class Visco2dWarning(UserWarning):
    pass


class SpectralWarning(Visco2dWarning):
    pass


class StabilizerWarning(Visco2dWarning):
    pass


from ._grid import Grid, make_grid
from ._fields import ScalarField, VectorField, SymTensorField, Tensor2Field
from ._spectral import (derivative, inv_laplacian, leray_project, dealias,
                        sobolev_norm)
from ._tensor import (PolarParts, sqrt_spd2, polar_decompose_left,
                      compose_from_strain_angle, gamma_coefficient,
                      velocity_split, a_commutator, inv_i_plus_v)
from ._models import (OldroydState, StrainState, RotStrainState,
                      ConstraintResiduals, rhs_oldroyd, rhs_strain,
                      rhs_theta, rhs_rotstrain, recover_pressure, assemble_f,
                      constraint_residuals, hodge_residual)
from ._initdata import (InitRecipe, taylor_green_velocity,
                        warm_start_deformation, states_from_deformation,
                        initial_states)
from ._integrator import SchemeSpec, step, cfl_dt
from ._diagnostics import (DiagnosticsRecord, BalanceReport, Certificate,
                           DissipationLedger, basic_energy,
                           energy_law_residual, auxiliary_u, u_balance,
                           theorem_certificate, record)
from ._config import RunConfig, parse_config, format_config
from ._traceSeries import traceSeries, write_snapshot, read_snapshot
from ._Simulation import Simulation, Trajectory, run_simulation
from ._presets import execute_preset, registerPreset


__all__ = ["Grid",
           "make_grid",
           "ScalarField",
           "VectorField",
           "SymTensorField",
           "Tensor2Field",
           "derivative",
           "inv_laplacian",
           "leray_project",
           "dealias",
           "sobolev_norm",
           "PolarParts",
           "sqrt_spd2",
           "polar_decompose_left",
           "compose_from_strain_angle",
           "gamma_coefficient",
           "velocity_split",
           "a_commutator",
           "inv_i_plus_v",
           "OldroydState",
           "StrainState",
           "RotStrainState",
           "ConstraintResiduals",
           "rhs_oldroyd",
           "rhs_strain",
           "rhs_theta",
           "rhs_rotstrain",
           "recover_pressure",
           "assemble_f",
           "constraint_residuals",
           "hodge_residual",
           "InitRecipe",
           "taylor_green_velocity",
           "warm_start_deformation",
           "states_from_deformation",
           "initial_states",
           "SchemeSpec",
           "step",
           "cfl_dt",
           "DiagnosticsRecord",
           "BalanceReport",
           "Certificate",
           "DissipationLedger",
           "basic_energy",
           "energy_law_residual",
           "auxiliary_u",
           "u_balance",
           "theorem_certificate",
           "record",
           "RunConfig",
           "parse_config",
           "format_config",
           "traceSeries",
           "write_snapshot",
           "read_snapshot",
           "Simulation",
           "Trajectory",
           "run_simulation",
           "execute_preset",
           "registerPreset",
           "Error",
           "GridError",
           "FieldError",
           "TensorError",
           "ModelError",
           "InitError",
           "IntegrationError",
           "DiagnosticsError",
           "ConfigError",
           "PresetError",
           "TraceError",
           "Visco2dWarning",
           "SpectralWarning",
           "StabilizerWarning",
           ]
