"""Pure numpy fallback for the exact integer trace kernel.

numpy's int64 matmul wraps silently on overflow, so every multiplication is
guarded by a conservative magnitude bound: if ``max|A| * max|B| * inner_dim``
can reach 2**63 the multiply is refused.  The bound may trip before a true
overflow would occur; the caller falls back to floating point either way, so
the worst case is a lost exactness guarantee, never a wrong number.
"""

from __future__ import annotations

import numpy as np

_INT64_LIMIT = 2**63 - 1


def _checked_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    amax = int(np.abs(a).max(initial=0))
    bmax = int(np.abs(b).max(initial=0))
    if amax * bmax * a.shape[1] > _INT64_LIMIT:
        raise OverflowError("int64 matrix product may overflow")
    return a @ b


def trace_power_i64(matrix: np.ndarray, power: int) -> int:
    """Exact trace of an integer matrix power, by repeated squaring.

    Raises OverflowError instead of ever returning a wrapped value.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    m = np.ascontiguousarray(matrix, dtype=np.int64)
    result = None
    base = m
    e = power
    while e:
        if e & 1:
            result = base if result is None else _checked_matmul(result, base)
        e >>= 1
        if e:
            base = _checked_matmul(base, base)
    return int(np.trace(result))
