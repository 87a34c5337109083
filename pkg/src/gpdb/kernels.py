"""Selects the compiled simplex kernels when built, else the pure-Python ones.

Set ``GPDB_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GPDB_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

pivot = _impl.pivot
entering = _impl.entering
leaving = _impl.leaving
