# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact integer trace kernel.

Computes trace(M^l) for int64 matrices by repeated squaring with per-element
overflow detection, so the exact path either returns the true integer or
raises OverflowError.  This is the hot loop of the mod-2 counting formulas,
where one such trace is taken per twist and the twist count is exponential
in the genus.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    """
    #include <stdint.h>
    static inline int ec_mul_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int ec_add_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_add_overflow(a, b, out);
    }
    """
    int ec_mul_ovf(int64_t a, int64_t b, int64_t *out) nogil
    int ec_add_ovf(int64_t a, int64_t b, int64_t *out) nogil


cdef int _matmul_checked(const int64_t[:, ::1] a, const int64_t[:, ::1] b,
                         int64_t[:, ::1] out) noexcept nogil:
    # Returns 1 on overflow, 0 on success.
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef int64_t acc, prod
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                if ec_mul_ovf(a[i, k], b[k, j], &prod):
                    return 1
                if ec_add_ovf(acc, prod, &acc):
                    return 1
            out[i, j] = acc
    return 0


def trace_power_i64(matrix, long power):
    """Exact trace of an integer matrix power; raises OverflowError."""
    if power < 1:
        raise ValueError("power must be >= 1")
    # private copy: the squaring loop reuses buffers and must never touch
    # the caller's array
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] base = \
        np.array(matrix, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t n = base.shape[0]
    if base.ndim != 2 or base.shape[1] != n:
        raise ValueError("matrix must be square")

    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] result = None
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] scratch = \
        np.empty((n, n), dtype=np.int64)
    cdef long e = power
    cdef int failed = 0
    cdef int have_result = 0

    while e:
        if e & 1:
            if not have_result:
                result = base.copy()
                have_result = 1
            else:
                failed = _matmul_checked(result, base, scratch)
                if failed:
                    raise OverflowError("int64 matrix product overflowed")
                result, scratch = scratch, result
        e >>= 1
        if e:
            failed = _matmul_checked(base, base, scratch)
            if failed:
                raise OverflowError("int64 matrix product overflowed")
            base, scratch = scratch, base

    cdef int64_t acc = 0
    cdef Py_ssize_t i
    for i in range(n):
        if ec_add_ovf(acc, result[i, i], &acc):
            raise OverflowError("int64 trace overflowed")
    return int(acc)
