"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the pure-NumPy
reference is the fallback.  Set KGRL_PURE_PYTHON=1 to force the fallback
(useful for parity testing and debugging).  Both backends implement the
same gru_forward / gru_backward contract documented in pyref.
"""
from __future__ import annotations

import os

from . import pyref

_FORCE_PURE = os.environ.get("KGRL_PURE_PYTHON", "") not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = pyref
else:
    _impl = pyref

gru_forward = _impl.gru_forward
gru_backward = _impl.gru_backward


def backend_name() -> str:
    return _impl.BACKEND


__all__ = ["gru_forward", "gru_backward", "backend_name", "pyref"]
