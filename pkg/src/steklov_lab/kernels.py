"""Hot mesh kernels, compiled when available.

The Cython build is optional.  ``STEKLOV_LAB_PURE_PYTHON=1`` forces the numpy
fallback, which is also used when the extension failed to build.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("STEKLOV_LAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_c as _impl  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "cython"

face_geometry = _impl.face_geometry
levelset_measure = _impl.levelset_measure
boundary_above = _impl.boundary_above

__all__ = ["BACKEND", "face_geometry", "levelset_measure", "boundary_above"]
