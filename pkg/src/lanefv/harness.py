"""Study orchestration: look-ahead sweeps, grid refinement, oracles.

Everything here runs scenarios through the driver and reduces the
snapshots to machine-readable tables; no physics lives in this module.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .diagnostics import l1_distance, total_variation, tv_bound
from .driver import run
from .oracles import relaxation_gap
from .scenarios import DEFAULT_N_CELLS, scenario

L1Row = Tuple[float, float, float, float, float]
TvRow = Tuple[float, float, float, float, float]


@dataclass(frozen=True)
class SweepResult:
    """Outcome of one look-ahead sweep on a fixed grid.

    ``l1_table`` rows are (eta, T, L1 lane 1, L1 lane 2, L1 sum) against
    the local reference; ``tv_table`` rows are (eta, t, TV of the
    averages summed over lanes, TV of the densities summed over lanes,
    a-priori bound at t).  Both are sorted by descending eta, then time.
    ``snapshots`` maps each computed eta (always including the local
    reference 0) to the run's snapshot list.
    """

    preset: str
    eta_list: Tuple[float, ...]
    snapshots: Dict[float, list]
    l1_table: List[L1Row]
    tv_table: List[TvRow]


def eta_sweep(preset, eta_list=None, n_cells=DEFAULT_N_CELLS, out_times=None):
    """Run a preset across look-ahead values against one local reference.

    ``eta_list`` defaults to the preset's own list.  The local model is
    always computed on the same grid as the reference; it appears in
    the tables only when explicitly requested (eta 0 in the list).
    """
    scn = scenario(preset, n_cells=n_cells)
    if out_times is not None:
        from dataclasses import replace

        scn = replace(scn, out_times=tuple(float(t) for t in out_times))
    etas = tuple(float(e) for e in (eta_list if eta_list is not None else scn.eta_list))
    if not etas:
        raise ValueError("eta_list must be nonempty")
    if any(e < 0 for e in etas):
        raise ValueError("eta values must be nonnegative")
    if len(set(etas)) != len(etas):
        raise ValueError("eta values must be distinct")

    ordered = tuple(sorted(etas, reverse=True))
    computed = ordered if 0.0 in ordered else ordered + (0.0,)
    snapshots = {eta: run(scn, eta) for eta in computed}
    reference = snapshots[0.0]

    l1_table = []
    tv_table = []
    for eta in ordered:
        for (state, record), (ref_state, _) in zip(snapshots[eta], reference):
            d1, d2, total = l1_distance(state, ref_state, scn.grid)
            record.l1_vs_reference = total
            l1_table.append((eta, state.t, d1, d2, total))
        for state, record in snapshots[eta]:
            bound = tv_bound(scn.bound_inputs(state.t))
            tv_table.append((eta, state.t, record.tv_w_sum, sum(record.tv_rho), bound))
    return SweepResult(preset, computed, snapshots, l1_table, tv_table)


def conservative_coarsen(values, factor):
    """Average consecutive blocks; exact mass-preserving restriction."""
    values = np.asarray(values, dtype=np.float64)
    if factor < 1 or values.shape[0] % factor:
        raise ValueError("block size must divide the array length")
    return values.reshape(-1, factor).mean(axis=1)


@dataclass(frozen=True)
class RefinementRow:
    dx: float
    error: float
    order: float


def refinement_study(preset, n_cells_list, fixed_eta, reference=None):
    """Convergence table under grid refinement at fixed look-ahead.

    ``preset`` is a scenario tag or a callable n_cells -> Scenario.
    Without a reference, each error is the L1 distance (summed over
    lanes) between a run and the next finer run coarsened onto its
    grid, measured at the final output time; with ``reference(grid, t)
    -> (rho1, rho2)`` errors are taken against the reference instead.
    Orders are base-2 logarithms of successive error ratios.
    """
    sizes = [int(n) for n in n_cells_list]
    if sorted(sizes) != sizes or len(set(sizes)) != len(sizes):
        raise ValueError("n_cells_list must be strictly increasing")
    for coarse, fine in zip(sizes, sizes[1:]):
        if fine % coarse:
            raise ValueError("each resolution must divide the next")

    build = preset if callable(preset) else (lambda n: scenario(preset, n_cells=n))
    cases = []
    for n in sizes:
        scn = build(n)
        final_state = run(scn, fixed_eta)[-1][0]
        cases.append((scn, final_state))

    errors = []
    if reference is not None:
        for scn, state in cases:
            exact1, exact2 = reference(scn.grid, state.t)
            err = float(
                (np.sum(np.abs(state.rho1 - exact1)) + np.sum(np.abs(state.rho2 - exact2)))
                * scn.grid.dx
            )
            errors.append(err)
        dxs = [scn.grid.dx for scn, _ in cases]
    else:
        for (coarse_scn, coarse_state), (_, fine_state) in zip(cases, cases[1:]):
            factor = fine_state.n_cells // coarse_state.n_cells
            err = float(
                (
                    np.sum(np.abs(coarse_state.rho1 - conservative_coarsen(fine_state.rho1, factor)))
                    + np.sum(np.abs(coarse_state.rho2 - conservative_coarsen(fine_state.rho2, factor)))
                )
                * coarse_scn.grid.dx
            )
            errors.append(err)
        dxs = [scn.grid.dx for scn, _ in cases[:-1]]

    rows = []
    for i, (dx, err) in enumerate(zip(dxs, errors)):
        if i + 1 < len(errors) and errors[i + 1] > 0:
            order = math.log2(errors[i] / errors[i + 1])
        else:
            order = math.nan
        rows.append(RefinementRow(dx, err, order))
    return rows


def ode_oracle_check(T, dt_list, n_cells=DEFAULT_N_CELLS):
    """Compare the uniform exchange scenario with its closed form.

    Returns rows (dt, max error of rho1 - rho2 against the exact gap at
    time T); the first-order source update makes the error linear in dt.
    """
    from dataclasses import replace

    scn = replace(scenario("uniform_ode", n_cells=n_cells), out_times=(float(T),))
    exact = float(relaxation_gap(T))
    rows = []
    for dt in dt_list:
        state = run(scn, scn.eta_list[0], dt_max=float(dt))[-1][0]
        gap = state.rho1 - state.rho2
        rows.append((float(dt), float(np.max(np.abs(gap - exact)))))
    return rows
