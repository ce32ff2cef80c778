"""Time stepping: nonlocal upwind scheme and its local Godunov limit.

Both schemes share the conservative update

    rho_new = rho - (dt/dx) * (F_right - F_left) + dt * s,

with s = +S on lane 1 and s = -S on lane 2, evaluated unsplit from the
pre-step state.  The nonlocal flux through an interface is the upstream
cell density times the lane speed at the strictly-downstream average;
the local flux is the exact Riemann (Godunov) flux.  Both ends use
zero-order extrapolation ghosts.  Every step asserts the box bounds
0 <= rho <= rho_max within a fixed tolerance and raises instead of
clamping.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BoundsViolationError
from .nonlocal_op import KernelWeights, eval_cell_anchored, eval_interface_anchored
from .state import LaneState

logger = logging.getLogger(__name__)

# Step assertion slack: one part in 1e10 of the box, absolute.
BOUNDS_TOL = 1e-10


@dataclass(frozen=True)
class StepParams:
    """Stepping policy attached to a run."""

    cfl: float = 0.5
    dt: float = 0.0
    boundary: str = "outflow-extrapolation"
    source_coupling: str = "unsplit-explicit"


@dataclass(frozen=True)
class StepResult:
    """One accepted step: the new state and its total boundary fluxes."""

    state: LaneState
    boundary_influx: float
    boundary_outflux: float


def cfl_dt(state, model, grid, cfl=0.5):
    """Stable step size: the tighter of the convective and source clamps.

    Convection limits dt to dx over the largest lane speed on the box;
    the exchange term limits dt to half the emptying time implied by
    the rate bound and the smaller capacity, so one explicit step
    cannot push a cell out of [0, rho_max].  With no dynamics at all
    (zero speeds, zero rate bound) the result is inf and the driver
    steps straight to its output times.
    """
    if not 0.0 < cfl <= 1.0:
        raise ValueError("cfl must be in (0, 1]")
    v_sup = max(
        model.v1.max_speed(model.rho_max[0]),
        model.v2.max_speed(model.rho_max[1]),
    )
    dt_conv = grid.dx / v_sup if v_sup > 0.0 else math.inf
    s_sup = model.lane_change.h_sup * max(1.0 / model.rho_max[0], 1.0 / model.rho_max[1])
    dt_src = 0.5 / s_sup if s_sup > 0.0 else math.inf
    dt = cfl * min(dt_conv, dt_src)
    if math.isinf(dt):
        logger.warning("model has no dynamics; dt falls back to the remaining time")
    return dt


@lru_cache(maxsize=64)
def _stationary_candidates(law, hi):
    """Interior critical points of u*V(u) on (0, hi), cached per law."""
    return tuple(law.flux_stationary_points(hi))


def _godunov_flux_values(ul, ur, law, candidates):
    """Godunov flux for arrays of interface states: the extremum of the
    flux between the two states, minimum when ul <= ur, else maximum."""
    ul = np.asarray(ul, dtype=np.float64)
    ur = np.asarray(ur, dtype=np.float64)
    fl = law.flux(ul)
    fr = law.flux(ur)
    rising = ul <= ur
    out = np.where(rising, np.minimum(fl, fr), np.maximum(fl, fr))
    lo = np.minimum(ul, ur)
    hi = np.maximum(ul, ur)
    for u_star in candidates:
        inside = (lo < u_star) & (u_star < hi)
        if not np.any(inside):
            continue
        fs = float(law.flux(u_star))
        out = np.where(inside & rising, np.minimum(out, fs), out)
        out = np.where(inside & ~rising, np.maximum(out, fs), out)
    return out


def godunov_flux(ul, ur, law):
    """Exact Riemann flux through an interface with states ul, ur."""
    ul = float(ul)
    ur = float(ur)
    if law.rho_ref is not None and (
        min(ul, ur) < -BOUNDS_TOL or max(ul, ur) > law.rho_ref + BOUNDS_TOL
    ):
        raise ValueError(f"interface states must lie in [0, {law.rho_ref}]")
    hi = max(float(ul), float(ur))
    candidates = _stationary_candidates(law, hi) if hi > 0.0 else ()
    return float(_godunov_flux_values(ul, ur, law, candidates))


def _check_bounds(rho, cap, lane, t):
    low = float(np.min(rho))
    high = float(np.max(rho))
    if low < -BOUNDS_TOL or high > cap + BOUNDS_TOL:
        raise BoundsViolationError(
            f"lane {lane} left [0, {cap}] at t = {t:.6g}: range [{low:.17g}, {high:.17g}]"
        )


def _apply_update(state, model, grid, dt, fluxes, source):
    lam = dt / grid.dx
    f1, f2 = fluxes
    t_new = state.t + dt
    rho1 = state.rho1 - lam * (f1[1:] - f1[:-1]) + dt * source
    rho2 = state.rho2 - lam * (f2[1:] - f2[:-1]) - dt * source
    _check_bounds(rho1, model.rho_max[0], 1, t_new)
    _check_bounds(rho2, model.rho_max[1], 2, t_new)
    return StepResult(
        LaneState(rho1, rho2, t_new),
        float(f1[0] + f2[0]),
        float(f1[-1] + f2[-1]),
    )


def _lane_fluxes_nonlocal(rho, law, weights):
    """Interface fluxes, length n+1; entry k is the flux at interface k."""
    tail = rho[-1]
    w_cell = eval_cell_anchored(rho, weights, tail)
    w_half = eval_interface_anchored(rho, weights, tail)
    flux = np.empty(rho.shape[0] + 1, dtype=np.float64)
    # Left ghost equals the first cell; the average strictly downstream
    # of the left boundary is the cell-anchored value of cell 0.
    flux[0] = rho[0] * float(law.evaluate(w_cell[0]))
    flux[1:] = rho * law.evaluate(w_half)
    return flux, w_cell


def nonlocal_step(state, model, grid, dt):
    """Advance one dt with the nonlocal upwind flux and unsplit source."""
    weights = KernelWeights.make(grid.dx, model.eta)
    f1, w1 = _lane_fluxes_nonlocal(state.rho1, model.v1, weights)
    f2, w2 = _lane_fluxes_nonlocal(state.rho2, model.v2, weights)
    source = model.source(state.rho1, state.rho2, w1, w2, grid.centers)
    return _apply_update(state, model, grid, dt, (f1, f2), source)


def _lane_fluxes_local(rho, law, cap):
    candidates = _stationary_candidates(law, cap)
    ul = np.concatenate(([rho[0]], rho))
    ur = np.concatenate((rho, [rho[-1]]))
    return _godunov_flux_values(ul, ur, law, candidates)


def local_step(state, model, grid, dt):
    """Advance one dt with the Godunov flux; the source sees the local
    densities in place of the downstream averages."""
    f1 = _lane_fluxes_local(state.rho1, model.v1, model.rho_max[0])
    f2 = _lane_fluxes_local(state.rho2, model.v2, model.rho_max[1])
    source = model.source(state.rho1, state.rho2, state.rho1, state.rho2, grid.centers)
    return _apply_update(state, model, grid, dt, (f1, f2), source)


def advance(state, model, grid, dt):
    """One step of the scheme selected by the model's eta."""
    step = local_step if model.is_local else nonlocal_step
    return step(state, model, grid, dt)
