"""Kernel backend selection.

The compiled extension is preferred when present; setting the environment
variable ``PDJC_PURE_PYTHON`` (to any nonempty value) before import forces
the numpy fallback.  Both backends expose the same two functions, so the
rest of the package only ever touches ``kernels``.
"""

from __future__ import annotations

import os

if os.environ.get("PDJC_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND_NAME

__all__ = ["kernels", "BACKEND"]
