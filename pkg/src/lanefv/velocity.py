"""Lane velocity laws.

A law is admissible when it is nonincreasing and nonnegative on the
density box of its lane; both properties are enforced by sampling in
``model.validate_model``.  The flux ``f(u) = u*V(u)`` and its interior
stationary points are exposed here because the local Riemann flux
needs its extrema over an interval.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

_SAMPLES = 1024


@dataclass(frozen=True)
class VelocityLaw:
    """Speed as a function of the (nonlocal or local) density average.

    ``evaluate`` and ``derivative`` accept scalars or arrays.  For the
    affine family the flux stationary point is closed-form; for custom
    laws it is bracketed on a sample grid and refined numerically.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    family: str = "custom"
    v_free: Optional[float] = None
    rho_ref: Optional[float] = None

    def flux(self, u):
        return np.asarray(u, dtype=np.float64) * self.evaluate(u)

    def max_speed(self, rho_max):
        """Largest speed on [0, rho_max], by dense sampling."""
        u = np.linspace(0.0, rho_max, _SAMPLES + 1)
        return float(np.max(self.evaluate(u)))

    def flux_stationary_points(self, rho_max):
        """Interior critical points of u*V(u) on (0, rho_max)."""
        if self.family == "greenshields":
            # f' = v_free*(1 - 2u/rho_ref) vanishes at rho_ref/2.
            u_star = 0.5 * self.rho_ref
            return [u_star] if 0.0 < u_star < rho_max else []
        u = np.linspace(0.0, rho_max, _SAMPLES + 1)
        fp = self.evaluate(u) + u * self.derivative(u)
        roots = []
        for k in range(len(u) - 1):
            a, b = fp[k], fp[k + 1]
            if a == 0.0 and u[k] > 0.0:
                roots.append(u[k])
            elif a * b < 0.0:
                g = lambda v: float(self.evaluate(v) + v * self.derivative(v))
                roots.append(brentq(g, u[k], u[k + 1]))
        return roots


def greenshields(v_free=1.0, rho_ref=1.0):
    """Affine law V(u) = v_free * (1 - u / rho_ref)."""
    if v_free <= 0 or rho_ref <= 0:
        raise ValueError("greenshields law needs v_free > 0 and rho_ref > 0")

    def evaluate(u):
        return v_free * (1.0 - np.asarray(u, dtype=np.float64) / rho_ref)

    def derivative(u):
        return np.full_like(np.asarray(u, dtype=np.float64), -v_free / rho_ref)

    return VelocityLaw(evaluate, derivative, "greenshields", v_free, rho_ref)


def custom_velocity(evaluate, derivative):
    """Wrap user-supplied callables as a velocity law."""
    return VelocityLaw(evaluate, derivative, "custom")
