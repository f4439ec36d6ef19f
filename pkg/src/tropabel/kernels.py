"""Backend selection for the slope scan.

The compiled extension is used when it imports; setting ``TROPABEL_PURE=1``
forces the Python fallback.  Inputs too large for 64-bit arithmetic also go
to the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("TROPABEL_PURE") == "1":
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_LIMIT = 1 << 62


def fits_int64(c, q, K: int, W: int) -> bool:
    qsum = abs(q[0]) + 2 * abs(q[1]) + abs(q[2])
    csum = max(abs(x) for x in c)
    return (K * K * qsum < _LIMIT and 2 * K * csum < _LIMIT and W * 2 * K * K < _LIMIT)


def scan_slope_pairs(c, q, K: int, W: int, backend: str | None = None):
    """Dispatch the scan; ``c`` is (c11, c12, c21, c22) and ``q`` is (q11, q12, q22)."""
    backend = backend or BACKEND
    if backend == "cython" and _compiled is not None and fits_int64(c, q, K, W):
        return _compiled.scan_slope_pairs(*c, *q, K, W)
    if backend not in ("cython", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    return _kernels_py.scan_slope_pairs(*c, *q, K, W)
