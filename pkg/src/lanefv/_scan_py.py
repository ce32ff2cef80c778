"""Pure-Python twin of the compiled backward scans.

Python floats are IEEE doubles and the loop performs the same operation
sequence as the C loop in ``_scan.pyx``, so both backends agree bit for
bit.  This module is the import-time fallback when the extension is
missing; it is also imported directly by the backend-equivalence tests
and the benchmark.
"""

import numpy as np


def scan_cells(rho, q, w, right_boundary):
    """Averages anchored at the left edge of each cell, cell j included."""
    values = np.ascontiguousarray(rho, dtype=np.float64).tolist()
    n = len(values)
    if q == 0.0:
        return np.array(values, dtype=np.float64)
    out = [0.0] * n
    acc = float(right_boundary)
    for j in range(n - 1, -1, -1):
        acc = acc + w * (values[j] - acc)
        out[j] = acc
    return np.array(out, dtype=np.float64)


def scan_interfaces(rho, q, w, right_boundary):
    """Averages anchored at the right edge of each cell, cell j excluded."""
    values = np.ascontiguousarray(rho, dtype=np.float64).tolist()
    n = len(values)
    out = [0.0] * n
    if n == 0:
        return np.array(out, dtype=np.float64)
    if q == 0.0:
        out[: n - 1] = values[1:]
        out[n - 1] = float(right_boundary)
        return np.array(out, dtype=np.float64)
    acc = float(right_boundary)
    out[n - 1] = acc
    for j in range(n - 2, -1, -1):
        acc = acc + w * (values[j + 1] - acc)
        out[j] = acc
    return np.array(out, dtype=np.float64)
