"""Kernel selection: compiled extension if importable, pure numpy otherwise.

Set ``EULERCOUNT_PURE_KERNEL=1`` to force the fallback (used by the backend
agreement tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _trace_pure

_FORCED_PURE = os.environ.get("EULERCOUNT_PURE_KERNEL", "") not in ("", "0")

if not _FORCED_PURE:
    try:
        from . import _trace_kernel as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _trace_pure
        BACKEND = "pure"
else:
    _impl = _trace_pure
    BACKEND = "pure"

trace_power_i64 = _impl.trace_power_i64


def backend_name() -> str:
    return BACKEND


def available_backends() -> dict[str, object]:
    """Name -> trace_power_i64 callable, for benchmarks and agreement tests."""
    backends: dict[str, object] = {"pure": _trace_pure.trace_power_i64}
    try:
        from . import _trace_kernel

        backends["compiled"] = _trace_kernel.trace_power_i64
    except ImportError:
        pass
    return backends
