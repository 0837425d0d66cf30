"""Backend selection for the row-reduction kernels.

The compiled ``_kernels`` extension is preferred.  Set ``NILEXT_PURE=1`` to
force the pure-Python implementation (both produce identical output).
"""
import os

from . import _kernels_py

if os.environ.get("NILEXT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rref_int = _impl.rref_int
reduce_int = _impl.reduce_int
insert_int = _impl.insert_int

__all__ = ["BACKEND", "rref_int", "reduce_int", "insert_int"]
