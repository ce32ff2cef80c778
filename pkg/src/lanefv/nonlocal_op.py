"""Exact downstream exponential averaging of piecewise-constant fields.

The average seen from x is (1/eta) * integral_x^inf exp((x-y)/eta) rho(y) dy.
For cell averages on a uniform grid the integral telescopes into a
backward recursion with per-cell decay q = exp(-dx/eta) and weight
w = 1 - q, evaluated by the scan kernels.  Two anchorings are used:

* cell-anchored: seen from the left edge of cell j, own cell included
  (feeds the exchange source),
* interface-anchored: seen from the right edge of cell j, strictly
  downstream (feeds the convective flux).

Beyond the last cell the field is continued by a constant, by default
the last cell value.
"""

from dataclasses import dataclass

import numpy as np

from .kernels import scan_cells, scan_interfaces

# exp(-x) underflows to subnormals near 745; past this the kernel
# support is lost inside one cell and the scan short-circuits.
_UNDERFLOW_RATIO = 700.0


@dataclass(frozen=True)
class KernelWeights:
    """Per-cell decay and weight of the exponential kernel.

    ``q = exp(-dx/eta)`` is the kernel mass beyond one cell width and
    ``w = 1 - q`` the mass inside one cell, so ``w + q == 1`` exactly
    as computed.  For ``dx/eta > 700`` the decay underflows and the
    pair degenerates to ``(q, w) = (0, 1)``.
    """

    dx: float
    eta: float
    q: float
    w: float

    @classmethod
    def make(cls, dx, eta):
        if dx <= 0:
            raise ValueError("dx must be positive")
        if eta <= 0:
            raise ValueError("eta must be positive; the local model bypasses the kernel")
        ratio = dx / eta
        q = 0.0 if ratio > _UNDERFLOW_RATIO else float(np.exp(-ratio))
        return cls(float(dx), float(eta), q, 1.0 - q)


def _prepare(rho, right_boundary):
    arr = np.ascontiguousarray(rho, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise ValueError("rho must be a nonempty 1-D array")
    if right_boundary is None:
        right_boundary = arr[-1]
    return arr, float(right_boundary)


def eval_cell_anchored(rho, weights, right_boundary=None):
    """Averages seen from each cell's left edge, own cell included.

    The field is continued by ``right_boundary`` past the last cell
    (last cell value when omitted).
    """
    arr, tail = _prepare(rho, right_boundary)
    return scan_cells(arr, weights.q, weights.w, tail)


def eval_interface_anchored(rho, weights, right_boundary=None):
    """Averages seen from each cell's right edge, own cell excluded.

    The last entry is the plain continuation value: strictly downstream
    of the final interface only the constant tail remains.
    """
    arr, tail = _prepare(rho, right_boundary)
    return scan_interfaces(arr, weights.q, weights.w, tail)


def identity_residual(rho, w_values, weights):
    """Discrete defect of the exact relation  d/dx W = (W - rho) / eta.

    Returns ``max_j |(W[j+1]-W[j])/dx - (W[j]-rho[j])/eta| * eta`` over
    the cells with a forward difference.  The relation is exact for the
    continuum field, so the defect measures only the within-cell
    curvature of W and shrinks linearly with dx at fixed eta.
    """
    rho = np.ascontiguousarray(rho, dtype=np.float64)
    w_values = np.ascontiguousarray(w_values, dtype=np.float64)
    if rho.shape != w_values.shape:
        raise ValueError("rho and W must have matching shapes")
    if rho.shape[0] < 3:
        raise ValueError("need at least 3 cells for the defect")
    grad = np.diff(w_values) / weights.dx
    relax = (w_values[:-1] - rho[:-1]) / weights.eta
    return float(np.max(np.abs(grad - relax)) * weights.eta)
