"""Backend selection for the backward scan kernels.

The compiled extension is preferred; the pure-Python twin is selected
when the extension is absent or when ``LANEFV_PURE_PYTHON`` is set in
the environment.  Both expose ``scan_cells`` and ``scan_interfaces``
with identical semantics and bit-identical results.
"""

import os

from . import _scan_py

_FORCE_PYTHON = bool(os.environ.get("LANEFV_PURE_PYTHON"))

if not _FORCE_PYTHON:
    try:
        from . import _scan as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"
else:
    _impl = _scan_py
    BACKEND = "python"

scan_cells = _impl.scan_cells
scan_interfaces = _impl.scan_interfaces


def backend_name():
    """Name of the active scan backend: 'compiled' or 'python'."""
    return BACKEND
