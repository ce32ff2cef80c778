"""Lane densities and nonlocal-average fields on a grid."""

from dataclasses import dataclass, field

import numpy as np


def _as_density(values, n_cells, label):
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != n_cells:
        raise ValueError(f"{label} must be a 1-D array of length {n_cells}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{label} contains non-finite values")
    return arr


@dataclass
class LaneState:
    """Cell-average densities of both lanes at one instant."""

    rho1: np.ndarray
    rho2: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n = len(self.rho1)
        self.rho1 = _as_density(self.rho1, n, "rho1")
        self.rho2 = _as_density(self.rho2, n, "rho2")
        self.t = float(self.t)

    @property
    def n_cells(self):
        return self.rho1.shape[0]

    @property
    def lanes(self):
        return (self.rho1, self.rho2)

    def copy(self):
        return LaneState(self.rho1.copy(), self.rho2.copy(), self.t)


@dataclass(frozen=True)
class NonlocalField:
    """Downstream averages of both lanes with their anchoring convention.

    ``anchoring`` is 'cell' for one value per cell (anchored at the
    cell's left edge, own cell included) or 'interface' for the value
    strictly downstream of each cell's right edge.
    """

    w1: np.ndarray
    w2: np.ndarray
    anchoring: str
    eta: float

    _ANCHORINGS = ("cell", "interface")

    def __post_init__(self):
        if self.anchoring not in self._ANCHORINGS:
            raise ValueError(f"anchoring must be one of {self._ANCHORINGS}")
        if self.eta <= 0:
            raise ValueError("nonlocal field requires eta > 0")
        if self.w1.shape != self.w2.shape:
            raise ValueError("lane fields must have matching shapes")
