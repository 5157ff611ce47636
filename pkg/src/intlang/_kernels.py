"""Backend selection for the trace kernels.

The compiled ``_speedups`` module is used when it was built; otherwise the
pure-Python twin.  Setting ``INTLANG_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

if os.environ.get("INTLANG_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

STRICT = _pykernels.STRICT
WEAK = _pykernels.WEAK
INTERLEAVE = _pykernels.INTERLEAVE

interleave = _impl.interleave
weak_seq = _impl.weak_seq
combine = _impl.combine
lift = _impl.lift
lift_restricted = _impl.lift_restricted
