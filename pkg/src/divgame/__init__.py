# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# internal
from . import utils
from . import typeins
from . import constants
from . import exceptions

from ._ease import *
from .base import BaseBoundary, BaseStopRule, BaseOutputStream
from .typeins import ModelParams, SimConfig, SamplePath, ControlledTrajectory, PayoffEstimate, ResidualReport
from .dividend import DividendSolution, characteristic_roots, optimal_barrier, value_w, generator_residual
from .equilibrium import EquilibriumSolution, solve_equilibrium, solve_alpha, phi
from .verify import verify_variational, surface_residual
from .strategy import ConstantGap, build_controlled, reflect_leader, respond_follower, symmetric_controls
from .montecarlo import (
    FixedTime, FirstHitting, gen_paths, sample_paths, payoff_pair,
    estimate_asymmetric, estimate_symmetric, deviation_scan, indifference_check
)
from .decorators import timed


__name__ = "divgame"
__license__ = "MIT"
__copyright__ = "Copyright (C) 2024 divgame contributors"

__version_info__ = (0, 1, 0)
__version__ = ".".join(map(str, __version_info__))


# ! __all__ is not declared for `ease`, so you can't import it via `from _ import *`.
__all__ = [
    "ModelParams",
    "SimConfig",
    "SamplePath",
    "ControlledTrajectory",
    "PayoffEstimate",
    "ResidualReport",
    "DividendSolution",
    "characteristic_roots",
    "optimal_barrier",
    "value_w",
    "generator_residual",
    "EquilibriumSolution",
    "solve_equilibrium",
    "solve_alpha",
    "phi",
    "verify_variational",
    "surface_residual",
    "ConstantGap",
    "build_controlled",
    "reflect_leader",
    "respond_follower",
    "symmetric_controls",
    "FixedTime",
    "FirstHitting",
    "gen_paths",
    "sample_paths",
    "payoff_pair",
    "estimate_asymmetric",
    "estimate_symmetric",
    "deviation_scan",
    "indifference_check",
    "BaseBoundary",
    "BaseStopRule",
    "BaseOutputStream",
    "timed"
]
