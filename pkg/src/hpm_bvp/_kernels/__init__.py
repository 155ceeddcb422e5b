"""Kernel dispatch: compiled fast path when available, pure Python otherwise.

The compiled backend is preferred when the extension module was built and
the environment variable ``HPM_BVP_PURE`` is unset.  Individual calls whose
inputs do not fit the packed-exponent layout (more than 6 symbols, or an
exponent above 511) fall back to the pure kernels transparently.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _fastcore
except ImportError:
    _fastcore = None

_use_fast = _fastcore is not None
if os.environ.get("HPM_BVP_PURE", "").strip() not in ("", "0"):
    _use_fast = False


def available_backends() -> tuple[str, ...]:
    if _fastcore is not None:
        return ("compiled", "pure")
    return ("pure",)


def active_backend() -> str:
    return "compiled" if _use_fast else "pure"


def use_backend(name: str) -> str:
    """Select the kernel backend: "compiled", "pure", or "auto"."""
    global _use_fast
    if name == "auto":
        _use_fast = _fastcore is not None
    elif name == "pure":
        _use_fast = False
    elif name == "compiled":
        if _fastcore is None:
            raise RuntimeError("compiled kernel backend is not available")
        _use_fast = True
    else:
        raise ValueError(f"unknown backend {name!r}")
    return active_backend()


def poly_mul(a: dict, b: dict, nsym: int) -> dict:
    if _use_fast:
        try:
            return _fastcore.poly_mul(a, b, nsym)
        except _fastcore.PackOverflow:
            pass
    return pure.poly_mul(a, b, nsym)


def series_mul(a: list, b: list, nsym: int, cap: int) -> list:
    if _use_fast:
        try:
            return _fastcore.series_mul(a, b, nsym, cap)
        except _fastcore.PackOverflow:
            pass
    return pure.series_mul(a, b, nsym, cap)
