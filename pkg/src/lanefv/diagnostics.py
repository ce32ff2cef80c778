"""Measurements: variation, the a-priori variation bound, Kruzhkov
entropy residuals, and L1 distances.

All functions are pure measurements; nothing here mutates a state or
asserts a tolerance.  Tests and the driver decide what to compare.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .schemes import _godunov_flux_values, _stationary_candidates


@dataclass(frozen=True)
class TvBoundInputs:
    """Ingredients of the a-priori bound on the variation of the
    downstream averages.

    ``tv0`` is the variation of the initial datum summed over lanes;
    ``h_sup``, ``h_lip1``, ``h_lip2`` and ``h_var_x`` are the declared
    bounds of the lane-change rate.  ``h_lip2`` does not enter the
    bound's final form but is carried with the rest of the metadata.
    """

    tv0: float
    rho_max: Tuple[float, float]
    h_sup: float
    h_lip1: float
    h_lip2: float
    h_var_x: float
    t: float

    def __post_init__(self):
        values = (self.tv0, *self.rho_max, self.h_sup, self.h_lip1, self.h_lip2, self.h_var_x, self.t)
        if any(v < 0 for v in values):
            raise ValueError("all bound inputs must be nonnegative")


@dataclass
class DiagnosticsRecord:
    """Per-snapshot measurements emitted by the driver."""

    t: float
    tv_rho: Tuple[float, float]
    tv_w: Tuple[float, float]
    tv_w_sum: float
    mass_total: float
    mass_ledger_residual: float
    min_max: Tuple[Tuple[float, float], Tuple[float, float]]
    entropy_residual_max: float
    l1_vs_reference: Optional[float] = None


def total_variation(a):
    """Sum of absolute jumps between neighbouring entries."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 1 or a.shape[0] < 1:
        raise ValueError("need a nonempty 1-D array")
    if a.shape[0] == 1:
        return 0.0
    return float(np.sum(np.abs(np.diff(a))))


def tv_bound(inputs):
    """A-priori bound on the variation of the downstream averages.

    The growth rate sums seven terms and deliberately counts the
    capacity-ratio summands twice each; regrouped it reads
    2*h_lip1*(m/m1 + m/m2 + 1) + h_sup*(1/m1 + 1/m2) with m the larger
    capacity.  Simplifying the term list would change the guaranteed
    constant, so it stays as declared.
    """
    m1, m2 = inputs.rho_max
    m_inf = max(m1, m2)
    amplitude = inputs.tv0 + 4.0 * (m_inf / m2 + m_inf / m1 + 1.0) * inputs.h_var_x
    rate = (
        m_inf * inputs.h_lip1 / m2
        + inputs.h_sup / m1
        + m_inf * inputs.h_lip1 / m1
        + 2.0 * inputs.h_lip1
        + m_inf * inputs.h_lip1 / m1
        + inputs.h_sup / m2
        + m_inf * inputs.h_lip1 / m2
    )
    return amplitude * math.exp(2.0 * inputs.t * rate)


def l1_distance(a, b, grid):
    """L1 distance per lane and summed over lanes."""
    if a.n_cells != b.n_cells or a.n_cells != grid.n_cells:
        raise ValueError("states and grid must share one cell count")
    d1 = float(np.sum(np.abs(a.rho1 - b.rho1)) * grid.dx)
    d2 = float(np.sum(np.abs(a.rho2 - b.rho2)) * grid.dx)
    return d1, d2, d1 + d2


def _entropy_flux(values, law, candidates, k):
    """Numerical entropy flux at every interface, ghost-padded."""
    padded = np.concatenate(([values[0]], values, [values[-1]]))
    a = padded[:-1]
    b = padded[1:]
    top = _godunov_flux_values(np.maximum(a, k), np.maximum(b, k), law, candidates)
    bot = _godunov_flux_values(np.minimum(a, k), np.minimum(b, k), law, candidates)
    return top - bot


def entropy_residual(before, after, model, grid, dt, k):
    """Largest discrete Kruzhkov entropy production per lane.

    The residual per cell is

        (|after-k| - |before-k|)/dt + (Q_right - Q_left)/dx - sign(after-k)*s

    with Q the Godunov-flux entropy flux and s the lane's source term
    as applied by the step (recomputed from the pre-step state).  The
    source sign is evaluated at the post-step value, which keeps the
    residual nonpositive (up to rounding) for the local Godunov scheme
    even in cells the source pushes across the level k; evaluating it
    at the pre-step value would show spurious O(1) production there.
    """
    if before.n_cells != after.n_cells or before.n_cells != grid.n_cells:
        raise ValueError("states and grid must share one cell count")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if model.is_local:
        w1, w2 = before.rho1, before.rho2
    else:
        from .nonlocal_op import KernelWeights, eval_cell_anchored

        weights = KernelWeights.make(grid.dx, model.eta)
        w1 = eval_cell_anchored(before.rho1, weights, before.rho1[-1])
        w2 = eval_cell_anchored(before.rho2, weights, before.rho2[-1])
    exchange = model.source(before.rho1, before.rho2, w1, w2, grid.centers)
    out = []
    for lane, (law, cap, sign) in enumerate(
        zip((model.v1, model.v2), model.rho_max, (1.0, -1.0))
    ):
        u0 = before.lanes[lane]
        u1 = after.lanes[lane]
        candidates = _stationary_candidates(law, cap)
        q = _entropy_flux(u0, law, candidates, float(k))
        r = (
            (np.abs(u1 - k) - np.abs(u0 - k)) / dt
            + np.diff(q) / grid.dx
            - np.sign(u1 - k) * (sign * exchange)
        )
        out.append(float(np.max(r)))
    return tuple(out)
