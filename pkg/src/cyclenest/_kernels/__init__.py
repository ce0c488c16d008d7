"""Search kernels: compiled core with a pure-Python fallback.

The hot inner loops (layered BFS, dual ball growth, girth scan) exist in
two interchangeable implementations:

* ``cyclenest._kernels._fast`` -- Cython extension built at install time;
* ``cyclenest._kernels.pure``  -- pure-Python reference implementation.

The compiled backend is selected at import when available.  Set
``CYCLENEST_PURE_KERNELS=1`` to force the pure backend (used by the
parity tests and the benchmark).  Both backends are bit-for-bit
equivalent on all inputs.
"""

import importlib
import os

from . import pure

_impl = None
if os.environ.get("CYCLENEST_PURE_KERNELS", "") != "1":
    try:
        _impl = importlib.import_module("._fast", __name__)
    except ImportError:
        _impl = None

if _impl is not None:
    BACKEND = "compiled"
else:
    BACKEND = "pure"
    _impl = pure

csr_bfs = _impl.csr_bfs
csr_dual_bfs = _impl.csr_dual_bfs
csr_girth_scan = _impl.csr_girth_scan

__all__ = ["BACKEND", "csr_bfs", "csr_dual_bfs", "csr_girth_scan", "pure"]
