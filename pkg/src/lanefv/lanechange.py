"""Lane-changing rate and the coupling source term.

The source moving vehicles between lanes is

    S = (rho2/rho2_max - rho1/rho1_max) * H(w1, w2, x)

added to lane 1 and subtracted from lane 2.  ``H`` is nonnegative and
carries declared bounds used by the a-priori variation bound: its sup,
Lipschitz constants in each average argument, and its variation in x
uniformly over the averages.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class LaneChangeRate:
    """Nonnegative rate H(w1, w2, x) with declared bounds.

    Attributes
    ----------
    rate : callable
        ``rate(w1, w2, x)`` vectorized over same-shape arrays.
    h_sup : float
        Upper bound for H.
    h_lip1, h_lip2 : float
        Lipschitz constants of H in the first and second average.
    h_var_x : float
        Bound on the variation of ``H(w1, w2, .)`` uniform in (w1, w2).
    """

    rate: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
    h_sup: float
    h_lip1: float = 0.0
    h_lip2: float = 0.0
    h_var_x: float = 0.0

    def __post_init__(self):
        for name in ("h_sup", "h_lip1", "h_lip2", "h_var_x"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def __call__(self, w1, w2, x):
        return self.rate(w1, w2, x)


def indicator_rate(a=-2.0, b=2.0, scale=1.0):
    """H = scale on [a, b], zero elsewhere, independent of the averages."""
    if b < a:
        raise ValueError("need a <= b")
    if scale < 0:
        raise ValueError("scale must be nonnegative")

    def rate(w1, w2, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where((x >= a) & (x <= b), scale, 0.0)

    # Two jumps of height `scale` in x; no dependence on the averages.
    return LaneChangeRate(rate, h_sup=scale, h_var_x=2.0 * scale)


def constant_rate(value=1.0):
    """H identically equal to `value` everywhere."""
    if value < 0:
        raise ValueError("value must be nonnegative")

    def rate(w1, w2, x):
        x = np.asarray(x, dtype=np.float64)
        return np.full_like(x, value)

    return LaneChangeRate(rate, h_sup=value)


def zero_rate():
    """H identically zero: the lanes decouple."""
    return indicator_rate(0.0, 0.0, 0.0)


def source_rate(rho1, rho2, w1, w2, x, rho_max, rate):
    """Exchange rate S at the given cells; positive fills lane 1.

    The same array is added to lane 1 and subtracted from lane 2, so
    combined mass is conserved exactly in floating point.
    """
    imbalance = np.asarray(rho2, dtype=np.float64) / rho_max[1] - np.asarray(
        rho1, dtype=np.float64
    ) / rho_max[0]
    return imbalance * rate(w1, w2, x)
