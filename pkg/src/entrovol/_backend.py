"""Pick the compiled kernels when built, the numpy ones otherwise.

Set ``ENTROVOL_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the cross-backend tests).
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("ENTROVOL_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by ENTROVOL_PURE_PYTHON")
    from . import _kernels as kernels

    NAME = "cython"
except ImportError:
    kernels = _pykernels
    NAME = "python"


def compiled_kernels():
    """The compiled module, or None if it was never built."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


__all__ = ["kernels", "NAME", "compiled_kernels"]
