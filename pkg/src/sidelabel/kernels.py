"""Backend selection for the hot loops.

The compiled Cython extension is used when it imports; otherwise (or when
``SIDELABEL_PURE=1`` is set) the numpy fallback is used. Both expose
``minplus_merge``, ``path_dp`` and ``enumerate_min`` with identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("SIDELABEL_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        _impl = _compiled


def use_backend(name: str) -> None:
    """Switch backend at runtime (``"cython"`` or ``"python"``); used by tests and benchmarks."""
    global BACKEND, _impl
    if name == "python":
        _impl = _pykernels
    elif name == "cython":
        from . import _kernels

        _impl = _kernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def available_backends() -> list[str]:
    out = ["python"]
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return out
    return ["cython", *out]


def minplus_merge(a, b, cap):
    return _impl.minplus_merge(a, b, cap)


def path_dp(cost, agree, budget):
    return _impl.path_dp(cost, agree, budget)


def enumerate_min(m, indptr, nbr, neg, lin, inw, require_split, fix_first, weight=1):
    return _impl.enumerate_min(m, indptr, nbr, neg, lin, inw, require_split, fix_first, weight)
