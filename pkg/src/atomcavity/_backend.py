"""Select the integration kernel: compiled extension, numpy fallback.

The compiled ``_kernel`` is preferred when importable; set
``ATOMCAVITY_BACKEND=python`` or ``=cython`` to force a choice (forcing
``cython`` raises if the extension is missing rather than silently
degrading).
"""

from __future__ import annotations

import os

_requested = os.environ.get("ATOMCAVITY_BACKEND", "").lower()

if _requested == "python":
    from . import _kernel_py as _impl
elif _requested == "cython":
    from . import _kernel as _impl  # type: ignore[no-redef]
elif _requested:
    raise ValueError(f"unknown ATOMCAVITY_BACKEND={_requested!r} (use 'cython' or 'python')")
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND_NAME
apply_liouvillian = _impl.apply_liouvillian
run_rk4 = _impl.run_rk4
