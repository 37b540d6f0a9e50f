"""Kernel selection: the compiled extension when available, else pure Python.

Set ``THETAKIT_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("THETAKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

solve_functional_csp = _impl.solve_functional_csp
check_category_laws = _impl.check_category_laws
