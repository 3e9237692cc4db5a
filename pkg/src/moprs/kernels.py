"""Backend selection for the integer elimination kernels.

The compiled extension is preferred; the pure-Python module is used when it
is missing or when the environment variable ``MOPRS_PURE_PYTHON`` is set to a
non-empty value other than ``0``.
"""

import os

from . import _kernels_py

_force_pure = os.environ.get("MOPRS_PURE_PYTHON", "") not in ("", "0")

if _force_pure:
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bareiss_det = _impl.bareiss_det
bareiss_solve = _impl.bareiss_solve
bareiss_rank = _impl.bareiss_rank

__all__ = ["BACKEND", "bareiss_det", "bareiss_solve", "bareiss_rank"]
