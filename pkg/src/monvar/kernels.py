"""Backend selection for the multiplication-table kernels.

Tries the compiled extension first and falls back to the pure-Python
twin.  Set ``MONVAR_PURE=1`` to force the fallback (used by the test
suite to exercise both paths and by the benchmark to compare them).
"""

from __future__ import annotations

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if not os.environ.get("MONVAR_PURE"):
    try:
        from . import _kernel as _compiled

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass


def find_assoc_violation(table, size):
    return _impl.find_assoc_violation(table, size)


def find_zero(table, size):
    return _impl.find_zero(table, size)


def check_identity(table, size, one, lhs, rhs, nletters, zero):
    return _impl.check_identity(table, size, one, lhs, rhs, nletters, zero)
