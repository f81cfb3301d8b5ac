"""Backend selection for the entropy-form kernels.

The compiled extension is used when it imports; setting the environment
variable ``MADCAP_PURE_PYTHON=1`` forces the numpy fallback.  ``BACKEND``
names the active implementation.
"""
import os

from . import _kernels_py

if os.environ.get("MADCAP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"
eval_forms = _impl.eval_forms
grid_top = _impl.grid_top
simplex_grid = _kernels_py.simplex_grid
ETA = _kernels_py.ETA
H2REL = _kernels_py.H2REL
