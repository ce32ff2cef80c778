"""Finite-volume engine for two-lane traffic with downstream look-ahead.

Two weakly coupled scalar balance laws model the lanes; each lane's
speed responds to an exponentially weighted average of the density
ahead, and a nonnegative rate exchanges vehicles between lanes where
their normalized densities differ.  Setting the look-ahead distance to
zero selects the local limit, solved with the classical Godunov flux.
"""

from .diagnostics import (
    DiagnosticsRecord,
    TvBoundInputs,
    entropy_residual,
    l1_distance,
    total_variation,
    tv_bound,
)
from .driver import run
from .errors import BoundsViolationError, ConfigError, ModelAdmissibilityError
from .grid import Grid
from .harness import (
    RefinementRow,
    SweepResult,
    conservative_coarsen,
    eta_sweep,
    ode_oracle_check,
    refinement_study,
)
from .kernels import backend_name
from .lanechange import (
    LaneChangeRate,
    constant_rate,
    indicator_rate,
    source_rate,
    zero_rate,
)
from .model import ModelSpec, validate_model
from .nonlocal_op import (
    KernelWeights,
    eval_cell_anchored,
    eval_interface_anchored,
    identity_residual,
)
from .scenarios import PRESETS, Scenario, Segment, cell_averages, scenario
from .schemes import (
    StepParams,
    StepResult,
    advance,
    cfl_dt,
    godunov_flux,
    local_step,
    nonlocal_step,
)
from .state import LaneState, NonlocalField
from .velocity import VelocityLaw, custom_velocity, greenshields

__version__ = "0.1.0"

__all__ = [
    "BoundsViolationError",
    "ConfigError",
    "DiagnosticsRecord",
    "Grid",
    "KernelWeights",
    "LaneChangeRate",
    "LaneState",
    "ModelAdmissibilityError",
    "ModelSpec",
    "NonlocalField",
    "PRESETS",
    "RefinementRow",
    "Scenario",
    "Segment",
    "StepParams",
    "StepResult",
    "SweepResult",
    "TvBoundInputs",
    "VelocityLaw",
    "advance",
    "backend_name",
    "cell_averages",
    "cfl_dt",
    "conservative_coarsen",
    "constant_rate",
    "custom_velocity",
    "entropy_residual",
    "eta_sweep",
    "eval_cell_anchored",
    "eval_interface_anchored",
    "godunov_flux",
    "greenshields",
    "identity_residual",
    "indicator_rate",
    "l1_distance",
    "local_step",
    "nonlocal_step",
    "ode_oracle_check",
    "refinement_study",
    "run",
    "scenario",
    "source_rate",
    "total_variation",
    "tv_bound",
    "validate_model",
    "zero_rate",
    "__version__",
]
