"""Model assembly and admissibility validation."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .lanechange import LaneChangeRate, source_rate
from .velocity import VelocityLaw

OUTFLOW = "outflow-extrapolation"

_N_RHO = 1024
_N_W = 17
_N_X = 257


@dataclass(frozen=True)
class ModelSpec:
    """Complete model: lane velocities, capacities, exchange rate, range.

    ``eta > 0`` selects the nonlocal model with look-ahead distance
    eta; ``eta == 0`` selects the local limit solved with the Riemann
    flux.  The only supported boundary policy is zero-order
    extrapolation on both ends.
    """

    v1: VelocityLaw
    v2: VelocityLaw
    rho_max: Tuple[float, float]
    lane_change: LaneChangeRate
    eta: float
    boundary: str = OUTFLOW

    def __post_init__(self):
        if len(self.rho_max) != 2 or min(self.rho_max) <= 0:
            raise ValueError("rho_max must be two positive capacities")
        if self.eta < 0:
            raise ValueError("eta must be nonnegative (0 selects the local model)")
        if self.boundary != OUTFLOW:
            raise ValueError(f"unsupported boundary policy {self.boundary!r}")
        object.__setattr__(self, "rho_max", (float(self.rho_max[0]), float(self.rho_max[1])))
        object.__setattr__(self, "eta", float(self.eta))

    @property
    def is_local(self):
        return self.eta == 0.0

    def velocity(self, lane):
        return (self.v1, self.v2)[lane]

    def source(self, rho1, rho2, w1, w2, x):
        """Exchange rate S; lane 1 gains +S, lane 2 gains -S."""
        return source_rate(rho1, rho2, w1, w2, x, self.rho_max, self.lane_change)


def validate_model(spec, x_range=(-4.0, 4.0)):
    """Check admissibility by dense sampling; return violation messages.

    Velocities must be nonincreasing and nonnegative on each lane's
    box, and the exchange rate must be nonnegative, within its declared
    sup, and within its declared Lipschitz bounds in both averages.
    An empty list means no violation was detected.
    """
    violations = []
    for lane, (law, cap) in enumerate(zip((spec.v1, spec.v2), spec.rho_max)):
        u = np.linspace(0.0, cap, _N_RHO + 1)
        v = np.asarray(law.evaluate(u), dtype=np.float64)
        dv = np.asarray(law.derivative(u), dtype=np.float64)
        if not np.all(np.isfinite(v)) or not np.all(np.isfinite(dv)):
            violations.append(f"Lane-wise velocities: non-finite value detected (lane {lane + 1})")
            continue
        if np.any(dv > 0.0) or np.any(np.diff(v) > 1e-12 * max(1.0, np.max(np.abs(v)))):
            violations.append(f"Lane-wise velocities: V' > 0 detected (lane {lane + 1})")
        if np.any(v < 0.0):
            violations.append(f"Lane-wise velocities: negative speed detected (lane {lane + 1})")

    h = spec.lane_change
    w1 = np.linspace(0.0, spec.rho_max[0], _N_W)
    w2 = np.linspace(0.0, spec.rho_max[1], _N_W)
    x = np.linspace(x_range[0], x_range[1], _N_X)
    g1, g2, gx = np.meshgrid(w1, w2, x, indexing="ij")
    values = np.asarray(h(g1, g2, gx), dtype=np.float64)
    if values.shape != g1.shape:
        values = np.broadcast_to(values, g1.shape)
    if not np.all(np.isfinite(values)):
        violations.append("Lane changing: non-finite rate detected")
        return violations
    if np.any(values < 0.0):
        violations.append("Lane changing: H < 0 detected")
    sup = float(np.max(np.abs(values)))
    if sup > h.h_sup * (1.0 + 1e-12):
        violations.append(
            f"Lane changing: sampled sup |H| = {sup:.6g} exceeds declared bound {h.h_sup:.6g}"
        )
    d1 = np.max(np.abs(np.diff(values, axis=0))) / (w1[1] - w1[0]) if len(w1) > 1 else 0.0
    d2 = np.max(np.abs(np.diff(values, axis=1))) / (w2[1] - w2[0]) if len(w2) > 1 else 0.0
    if d1 > h.h_lip1 * (1.0 + 1e-9) + 1e-12:
        violations.append(
            f"Lane changing: slope {d1:.6g} in the first average exceeds declared {h.h_lip1:.6g}"
        )
    if d2 > h.h_lip2 * (1.0 + 1e-9) + 1e-12:
        violations.append(
            f"Lane changing: slope {d2:.6g} in the second average exceeds declared {h.h_lip2:.6g}"
        )
    return violations
