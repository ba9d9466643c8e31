"""Kernel backend selection.

The compiled extension (kaudit._ckernels) is preferred; the NumPy
fallback (kaudit._pykernels) is used when the extension is missing or
when the environment variable KAUDIT_PURE is set to a non-empty value.
Both expose the same functions with the same numerical contract.
"""
from __future__ import annotations

import os

from . import _pykernels

_FORCE_PURE = bool(os.environ.get("KAUDIT_PURE"))

if not _FORCE_PURE:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "pure"
else:
    _impl = _pykernels
    BACKEND = "pure"

jacobi_eigh = _impl.jacobi_eigh
sconvex_scan = _impl.sconvex_scan
theta_scan = _impl.theta_scan

FUNC_POWER = _pykernels.FUNC_POWER
FUNC_LOG = _pykernels.FUNC_LOG


def backend_name() -> str:
    """'compiled' or 'pure', as selected at import time."""
    return BACKEND


def available_backends() -> dict:
    """Importable kernel modules keyed by name (for tests/benchmarks)."""
    out = {"pure": _pykernels}
    try:
        from . import _ckernels

        out["compiled"] = _ckernels
    except ImportError:
        pass
    return out
