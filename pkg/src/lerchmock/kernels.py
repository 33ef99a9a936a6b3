"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it is
missing or when the environment variable ``LERCHMOCK_PURE_PYTHON`` is set
to a non-empty value other than ``0``.
"""
import os

from . import _pykernels

_force_python = os.environ.get("LERCHMOCK_PURE_PYTHON", "") not in ("", "0")

if _force_python:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

divisor_sieve = _impl.divisor_sieve
lerch_c1 = _impl.lerch_c1
lerch_c2 = _impl.lerch_c2
theta_sum = _impl.theta_sum
log_qprod_pair = _impl.log_qprod_pair


def backends():
    """Map backend name -> kernel module for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
