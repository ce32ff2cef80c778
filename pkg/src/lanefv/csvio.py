"""CSV serialization with lossless float formatting.

Numbers are written with 17 significant digits, enough to round-trip
any 64-bit float exactly.  Missing values (no nonlocal field on a local
run, no entropy residual on the initial snapshot) become empty fields.
All documents use LF line endings.
"""

import math

import numpy as np

from .nonlocal_op import KernelWeights, eval_cell_anchored

SNAPSHOT_HEADER = "x,rho1,rho2,w1,w2"
DIAGNOSTICS_HEADER = (
    "t,tv_rho1,tv_rho2,tv_w1,tv_w2,tv_w_sum,mass_total,mass_ledger_residual,"
    "min_rho1,max_rho1,min_rho2,max_rho2,entropy_residual_max,l1_vs_reference"
)
L1_TABLE_HEADER = "eta,t,l1_lane1,l1_lane2,l1_sum"
TV_TABLE_HEADER = "eta,t,tv_w_sum,tv_rho_sum,bound"
REFINEMENT_HEADER = "dx,l1_error,observed_order"
ODE_TABLE_HEADER = "dt,max_error"


def format_float(x):
    """17-significant-digit decimal; empty for missing values."""
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return ""
    return f"{x:.17g}"


def _rows_to_csv(header, rows):
    lines = [header]
    lines.extend(",".join(format_float(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_snapshot_csv(state, grid, model=None):
    """One row per cell center, ascending x.

    With a nonlocal model the w columns carry the per-cell downstream
    averages; for a local model (or none) they stay empty.
    """
    if state.n_cells != grid.n_cells:
        raise ValueError("state and grid must share one cell count")
    if model is not None and not model.is_local:
        weights = KernelWeights.make(grid.dx, model.eta)
        w1 = eval_cell_anchored(state.rho1, weights, state.rho1[-1])
        w2 = eval_cell_anchored(state.rho2, weights, state.rho2[-1])
    else:
        w1 = w2 = [None] * state.n_cells
    rows = zip(grid.centers, state.rho1, state.rho2, w1, w2)
    return _rows_to_csv(SNAPSHOT_HEADER, rows)


def read_snapshot_csv(text):
    """Inverse of write_snapshot_csv; empty w columns come back as None."""
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != SNAPSHOT_HEADER:
        raise ValueError("not a snapshot document")
    columns = [[], [], [], [], []]
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"malformed row: {line!r}")
        for col, part in zip(columns, parts):
            col.append(float(part) if part else math.nan)
    x, rho1, rho2, w1, w2 = (np.array(c) for c in columns)
    if np.all(np.isnan(w1)):
        return x, rho1, rho2, None, None
    return x, rho1, rho2, w1, w2


def write_diagnostics_csv(records):
    rows = []
    for rec in records:
        rows.append(
            (
                rec.t,
                rec.tv_rho[0],
                rec.tv_rho[1],
                rec.tv_w[0],
                rec.tv_w[1],
                rec.tv_w_sum,
                rec.mass_total,
                rec.mass_ledger_residual,
                rec.min_max[0][0],
                rec.min_max[0][1],
                rec.min_max[1][0],
                rec.min_max[1][1],
                rec.entropy_residual_max,
                rec.l1_vs_reference,
            )
        )
    return _rows_to_csv(DIAGNOSTICS_HEADER, rows)


def write_l1_table_csv(rows):
    return _rows_to_csv(L1_TABLE_HEADER, rows)


def write_tv_table_csv(rows):
    return _rows_to_csv(TV_TABLE_HEADER, rows)


def write_refinement_csv(rows):
    return _rows_to_csv(REFINEMENT_HEADER, [(r.dx, r.error, r.order) for r in rows])


def write_ode_table_csv(rows):
    return _rows_to_csv(ODE_TABLE_HEADER, rows)
