"""Kernel backend selection.

The compiled extension is preferred; set RINGREPS_PURE=1 to force the
numpy fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

if os.environ.get("RINGREPS_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

batch_matmul = _impl.batch_matmul
encode_mats = _impl.encode_mats
