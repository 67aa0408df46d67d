"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``KEYVARIETY_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if not os.environ.get("KEYVARIETY_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

mul_terms = kernels.mul_terms
add_scaled = kernels.add_scaled
sub_scaled_inplace = kernels.sub_scaled_inplace
scale_terms = kernels.scale_terms
