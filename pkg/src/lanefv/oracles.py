"""Closed-form reference solutions, independent of the schemes.

Single-lane Riemann problems for a concave flux u*V(u) with affine V:
a density increase travels as the entropy shock at the Rankine-Hugoniot
speed, a density decrease opens a rarefaction fan whose profile is the
inverse of the flux derivative.  Cell averages are computed from exact
antiderivatives, not by sampling, so they are usable as refinement
references.
"""

import numpy as np


def _require_affine(law):
    if law.family != "greenshields":
        raise ValueError("closed-form Riemann solutions cover only the affine law")


def shock_speed(ul, ur, law):
    """Rankine-Hugoniot speed of the jump between ul and ur."""
    if ul == ur:
        raise ValueError("equal states carry no jump")
    fl = float(law.flux(ul))
    fr = float(law.flux(ur))
    return (fr - fl) / (float(ur) - float(ul))


def riemann_profile(ul, ur, law, x, t):
    """Entropy solution at time t of the single-lane Riemann problem
    with left state ul and right state ur placed at x = 0."""
    _require_affine(law)
    x = np.asarray(x, dtype=np.float64)
    if t <= 0.0:
        return np.where(x < 0.0, ul, ur).astype(np.float64)
    if ul == ur:
        return np.full_like(x, float(ul))
    if ul < ur:
        s = shock_speed(ul, ur, law)
        return np.where(x < s * t, ul, ur).astype(np.float64)
    # Rarefaction: invert f'(u) = v_free * (1 - 2u/rho_ref) along x/t.
    fan = 0.5 * law.rho_ref * (1.0 - x / (t * law.v_free))
    return np.clip(fan, ur, ul)


def _fan_antiderivative(x, c1, c2, lo, hi):
    """Exact integral of clip(c1 - c2*s, lo, hi) over s from the fan head."""
    x_hi = (c1 - hi) / c2
    x_lo = (c1 - lo) / c2
    xa = np.clip(x, x_hi, x_lo)
    fan = c1 * (xa - x_hi) - 0.5 * c2 * (xa * xa - x_hi * x_hi)
    left = hi * np.minimum(x - x_hi, 0.0)
    right = lo * np.maximum(x - x_lo, 0.0)
    return left + fan + right


def riemann_cell_averages(ul, ur, law, grid, t):
    """Exact cell averages of the Riemann solution on the given grid."""
    _require_affine(law)
    if ul == ur:
        return np.full(grid.n_cells, float(ul))
    left = grid.interfaces[:-1]
    if t <= 0.0 or ul < ur:
        jump = shock_speed(ul, ur, law) * t if t > 0.0 else 0.0
        frac = np.clip((jump - left) / grid.dx, 0.0, 1.0)
        return float(ul) * frac + float(ur) * (1.0 - frac)
    c1 = 0.5 * law.rho_ref
    c2 = 0.5 * law.rho_ref / (t * law.v_free)
    primitive = _fan_antiderivative(grid.interfaces, c1, c2, float(ur), float(ul))
    return np.diff(primitive) / grid.dx


def relaxation_gap(t, gap0=0.2, rate=2.0):
    """Closed-form lane imbalance of the uniform exchange scenario."""
    return gap0 * np.exp(-rate * np.asarray(t, dtype=np.float64))
