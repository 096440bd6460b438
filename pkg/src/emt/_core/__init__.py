"""Union-find kernels with a compiled fast path.

The Cython extension ``_ufcore`` is used when it was built; otherwise the
pure-Python ``_ufpy`` module is used. Set ``EMT_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _ufpy

try:
    from . import _ufcore
except ImportError:  # extension not built
    _ufcore = None

BACKENDS: dict[str, ModuleType] = {"python": _ufpy}
if _ufcore is not None:
    BACKENDS["cython"] = _ufcore

if os.environ.get("EMT_PURE_PYTHON") or _ufcore is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "cython"


def get_backend(name: str | None = None) -> ModuleType:
    name = name or DEFAULT_BACKEND
    if name == "auto":
        name = DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"union-find backend {name!r} is not available") from None


AtomicUF = get_backend().AtomicUF
OffsetUF = get_backend().OffsetUF

__all__ = ["AtomicUF", "OffsetUF", "BACKENDS", "DEFAULT_BACKEND", "get_backend"]
