"""Preset scenarios and piecewise-constant initial data.

The figure presets share one setup: lane 1 starts at 0.6 on x >= 0,
lane 2 at 0.4 on x <= 0.1, both lanes carry the affine law V(u) = 1-u
with unit capacity, and vehicles change lanes inside [-2, 2] at rate
proportional to the normalized density imbalance.  The remaining
presets are oracle scenarios: a spatially uniform exchange relaxation
with a closed-form solution, a single-lane local Riemann problem, and
the decoupled (zero-exchange) variant used for variation-diminishing
checks.
"""

import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .diagnostics import TvBoundInputs, total_variation
from .grid import Grid
from .lanechange import LaneChangeRate, constant_rate, indicator_rate, zero_rate
from .model import ModelSpec
from .state import LaneState
from .velocity import VelocityLaw, greenshields

PRESETS = (
    "fig1_t03",
    "fig1_t1",
    "fig2_tx",
    "fig3_tv",
    "uniform_ode",
    "riemann_local",
    "s_zero_tv",
)

DEFAULT_DOMAIN = (-4.0, 4.0)
DEFAULT_N_CELLS = 1600
DEFAULT_CFL = 0.5


@dataclass(frozen=True)
class Segment:
    """Constant piece value * chi_[lo, hi]; endpoints may be infinite."""

    value: float
    lo: float = -math.inf
    hi: float = math.inf

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"segment needs lo <= hi, got [{self.lo}, {self.hi}]")


def cell_averages(segments, grid):
    """Exact cell averages of a sum of constant pieces.

    Cells straddling a segment endpoint receive the overlap fraction,
    so jump locations need not align with interfaces.
    """
    left = grid.interfaces[:-1]
    right = grid.interfaces[1:]
    out = np.zeros(grid.n_cells, dtype=np.float64)
    for seg in segments:
        overlap = np.minimum(right, seg.hi) - np.maximum(left, seg.lo)
        out += seg.value * np.clip(overlap, 0.0, grid.dx) / grid.dx
    return out


@dataclass(frozen=True)
class Scenario:
    """A named setup: grid, initial data, model pieces, output plan."""

    name: str
    grid: Grid
    rho1_0: np.ndarray
    rho2_0: np.ndarray
    v1: VelocityLaw
    v2: VelocityLaw
    rho_max: Tuple[float, float]
    lane_change: LaneChangeRate
    eta_list: Tuple[float, ...]
    out_times: Tuple[float, ...]
    cfl: float = DEFAULT_CFL

    def model(self, eta):
        return ModelSpec(self.v1, self.v2, self.rho_max, self.lane_change, eta)

    def initial_state(self):
        return LaneState(self.rho1_0.copy(), self.rho2_0.copy(), 0.0)

    def initial_tv(self):
        """Variation of the initial datum, summed over lanes."""
        return total_variation(self.rho1_0) + total_variation(self.rho2_0)

    def bound_inputs(self, t):
        h = self.lane_change
        return TvBoundInputs(
            tv0=self.initial_tv(),
            rho_max=self.rho_max,
            h_sup=h.h_sup,
            h_lip1=h.h_lip1,
            h_lip2=h.h_lip2,
            h_var_x=h.h_var_x,
            t=t,
        )

    def with_eta_list(self, eta_list):
        return replace(self, eta_list=tuple(float(e) for e in eta_list))


def _fig_times():
    return tuple(np.round(np.linspace(0.0, 1.0, 21), 10))


def scenario(name, n_cells=DEFAULT_N_CELLS, domain=DEFAULT_DOMAIN, cfl=DEFAULT_CFL):
    """Build a preset scenario on the default or an overridden grid."""
    if name not in PRESETS:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(PRESETS)}")
    grid = Grid(domain[0], domain[1], n_cells)
    law = greenshields(1.0, 1.0)
    caps = (1.0, 1.0)

    fig_rho1 = cell_averages([Segment(0.6, lo=0.0)], grid)
    fig_rho2 = cell_averages([Segment(0.4, hi=0.1)], grid)

    if name in ("fig1_t03", "fig1_t1"):
        t_final = 0.3 if name == "fig1_t03" else 1.0
        return Scenario(
            name, grid, fig_rho1, fig_rho2, law, law, caps,
            indicator_rate(-2.0, 2.0, 1.0),
            eta_list=(0.1, 0.01, 0.005, 0.0),
            out_times=(t_final,),
            cfl=cfl,
        )
    if name == "fig2_tx":
        return Scenario(
            name, grid, fig_rho1, fig_rho2, law, law, caps,
            indicator_rate(-2.0, 2.0, 1.0),
            eta_list=(0.1, 0.005, 0.0),
            out_times=_fig_times(),
            cfl=cfl,
        )
    if name == "fig3_tv":
        return Scenario(
            name, grid, fig_rho1, fig_rho2, law, law, caps,
            indicator_rate(-2.0, 2.0, 1.0),
            eta_list=(0.1, 0.01, 0.005),
            out_times=_fig_times(),
            cfl=cfl,
        )
    if name == "uniform_ode":
        return Scenario(
            name, grid,
            np.full(grid.n_cells, 0.6),
            np.full(grid.n_cells, 0.4),
            law, law, caps,
            constant_rate(1.0),
            eta_list=(0.1,),
            out_times=(1.0,),
            cfl=cfl,
        )
    if name == "riemann_local":
        return Scenario(
            name, grid,
            cell_averages([Segment(0.6, lo=0.0)], grid),
            np.zeros(grid.n_cells),
            law, law, caps,
            zero_rate(),
            eta_list=(0.0,),
            out_times=(1.0,),
            cfl=cfl,
        )
    # s_zero_tv: the fig1 setup with the exchange switched off.
    return Scenario(
        name, grid, fig_rho1, fig_rho2, law, law, caps,
        zero_rate(),
        eta_list=(0.1, 0.01, 0.005),
        out_times=_fig_times(),
        cfl=cfl,
    )
