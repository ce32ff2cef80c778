# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backward scans for the exponential downstream average.

Both scans walk the cells right to left, folding each cell into a
running average with weight w per cell and decay q per cell width.
The update is written in increment form ``acc + w*(value - acc)`` so a
constant input is reproduced bit for bit.  The pure-Python twin in
``_scan_py`` performs the identical sequence of double operations.
"""

import numpy as np

cimport numpy as cnp


def scan_cells(double[::1] rho, double q, double w, double right_boundary):
    """Averages anchored at the left edge of each cell, cell j included."""
    cdef Py_ssize_t n = rho.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    cdef double acc
    if q == 0.0:
        # Kernel support collapses inside one cell: the average is the cell itself.
        for j in range(n):
            o[j] = rho[j]
        return out
    acc = right_boundary
    for j in range(n - 1, -1, -1):
        acc = acc + w * (rho[j] - acc)
        o[j] = acc
    return out


def scan_interfaces(double[::1] rho, double q, double w, double right_boundary):
    """Averages anchored at the right edge of each cell, cell j excluded."""
    cdef Py_ssize_t n = rho.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    cdef double acc
    if n == 0:
        return out
    if q == 0.0:
        for j in range(n - 1):
            o[j] = rho[j + 1]
        o[n - 1] = right_boundary
        return out
    acc = right_boundary
    o[n - 1] = acc
    for j in range(n - 2, -1, -1):
        acc = acc + w * (rho[j + 1] - acc)
        o[j] = acc
    return out
