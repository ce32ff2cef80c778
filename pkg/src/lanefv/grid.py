"""Uniform one-dimensional finite-volume grid."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform cell partition of ``[x_min, x_max]`` into ``n_cells`` cells.

    Parameters
    ----------
    x_min, x_max : float
        Domain endpoints, ``x_min < x_max``.
    n_cells : int
        Number of cells, at least 1.
    """

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if not np.isfinite(self.x_min) or not np.isfinite(self.x_max):
            raise ValueError("domain endpoints must be finite")
        if self.x_max <= self.x_min:
            raise ValueError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_cells < 1:
            raise ValueError(f"need at least one cell, got {self.n_cells}")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def interfaces(self):
        """The n_cells + 1 cell interfaces, ascending."""
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)

    @property
    def centers(self):
        """The n_cells cell centers, ascending."""
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def __len__(self):
        return self.n_cells
