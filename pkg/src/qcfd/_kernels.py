"""Kernel selection: the compiled propagation loop when the extension built,
the pure NumPy twin otherwise. Set QCFD_PURE_PYTHON=1 to force the fallback.
"""

import os

if os.environ.get("QCFD_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _reference as kernel
else:
    try:
        from . import _speedups as kernel
    except ImportError:
        from . import _reference as kernel

BACKEND = kernel.BACKEND
