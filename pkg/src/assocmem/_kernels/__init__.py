"""Hot recall kernels: compiled extension when built, numpy fallback otherwise.

Set ASSOCMEM_PURE_PYTHON=1 before import to force the fallback (used by the
benchmark and by backend-parity tests).
"""

import os

from . import _slow

if os.environ.get("ASSOCMEM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _slow
    BACKEND = "python"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _slow
        BACKEND = "python"

sign_iterate = _impl.sign_iterate
async_sign_descent = _impl.async_sign_descent

__all__ = ["BACKEND", "sign_iterate", "async_sign_descent"]
