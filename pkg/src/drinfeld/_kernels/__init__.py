"""Kernel backend selection.

The compiled extension is used when it is importable; setting the
environment variable ``DRINFELD_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("DRINFELD_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as K
else:
    try:
        from . import _ckernels as K
    except ImportError:  # extension not built
        from . import _pykernels as K

BACKEND = K.BACKEND

__all__ = ["K", "BACKEND"]
