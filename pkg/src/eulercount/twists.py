"""Twisted vertex and edge adjacency matrices and their trace powers.

A twist is a chain of phase exponents: every oriented edge picks up the
t-th root of unity raised to its (signed) coefficient.  The vertex matrix is
n x n and Hermitian; the edge matrix is 2m x 2m over oriented-edge codes,
with row i carrying the phase of oriented edge i wherever edge i feeds into
the column edge (inverse pairs never feed into each other).

For t = 2 all phases are +-1 and both matrices are built as int64, so trace
powers run through the exact integer kernel; any other modulus uses complex
double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import trace_power_i64
from .errors import PreconditionError, ResidualError
from .graphs import MultiGraph
from .homology import Chain

VERTEX = "vertex"
EDGE = "edge"

#: relative bound on the imaginary part of a trace that must be real
DEFAULT_IMAG_TOL = 1e-9


@dataclass
class TwistedMatrix:
    """Dense twisted adjacency matrix with its construction metadata."""

    data: np.ndarray
    kind: str
    t: int
    gamma: Chain

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def exact(self) -> bool:
        return self.data.dtype.kind == "i"

    def as_complex(self) -> np.ndarray:
        if self.exact:
            return self.data.astype(np.complex128)
        return self.data


@lru_cache(maxsize=32)
def _unit_roots(t: int) -> np.ndarray:
    """Powers of exp(2*pi*i/t), with table[t-j] the exact conjugate of table[j].

    Forcing the conjugate symmetry bitwise makes the vertex matrices exactly
    Hermitian; t = 2 and t = 4 get exact integer entries.
    """
    if t == 2:
        return np.array([1.0, -1.0], dtype=np.complex128)
    if t == 4:
        return np.array([1.0, 1.0j, -1.0, -1.0j], dtype=np.complex128)
    table = np.empty(t, dtype=np.complex128)
    table[0] = 1.0
    for j in range(1, t // 2 + 1):
        table[j] = complex(np.cos(2 * np.pi * j / t), np.sin(2 * np.pi * j / t))
    for j in range(1, (t + 1) // 2):
        table[t - j] = table[j].conjugate()
    if t % 2 == 0:
        table[t // 2] = -1.0
    return table


def _check_gamma(g: MultiGraph, gamma: Chain) -> None:
    if len(gamma) != g.m:
        raise PreconditionError("twist chain length does not match edge count")


def vertex_matrix(
    g: MultiGraph, gamma: Chain, exact: bool | None = None
) -> TwistedMatrix:
    """The n x n twisted vertex adjacency matrix.

    Entry (i, j) sums the phases of all oriented edges from v_i to v_j; a
    loop adds its phase and the conjugate phase to the diagonal.  The zero
    twist reproduces the ordinary adjacency matrix.
    """
    _check_gamma(g, gamma)
    t = gamma.t
    if exact is None:
        exact = t == 2
    if exact and t != 2:
        raise PreconditionError("exact integer path requires modulus 2")
    if exact:
        a = np.zeros((g.n, g.n), dtype=np.int64)
        for i, (u, v) in enumerate(g.edges):
            s = -1 if gamma.coeffs[i] else 1
            a[u, v] += s
            a[v, u] += s
    else:
        roots = _unit_roots(t)
        a = np.zeros((g.n, g.n), dtype=np.complex128)
        for i, (u, v) in enumerate(g.edges):
            c = gamma.coeffs[i]
            a[u, v] += roots[c]
            a[v, u] += roots[(t - c) % t]
    return TwistedMatrix(a, VERTEX, t, gamma)


@lru_cache(maxsize=64)
def _feed_structure(g: MultiGraph) -> np.ndarray:
    """0/1 matrix over oriented-edge codes: row feeds into column.

    Code i feeds into code j when terminal(i) = initial(j) and j is not the
    inverse of i.
    """
    dim = 2 * g.m
    w = np.zeros((dim, dim), dtype=np.int64)
    for i in range(dim):
        head = g.terminal_of_code(i)
        inv = g.inverse_code(i)
        for j in g.out_codes(head):
            if j != inv:
                w[i, j] = 1
    w.setflags(write=False)
    return w


def edge_matrix(
    g: MultiGraph, gamma: Chain, exact: bool | None = None
) -> TwistedMatrix:
    """The 2m x 2m twisted edge adjacency matrix.

    The weight of a nonzero entry depends only on the row: phase of the
    twist coefficient for forward codes, its inverse for backward codes.
    """
    _check_gamma(g, gamma)
    t = gamma.t
    if exact is None:
        exact = t == 2
    if exact and t != 2:
        raise PreconditionError("exact integer path requires modulus 2")
    structure = _feed_structure(g)
    if exact:
        phases = np.ones(2 * g.m, dtype=np.int64)
        for i, c in enumerate(gamma.coeffs):
            if c:
                phases[i] = -1
                phases[i + g.m] = -1
    else:
        roots = _unit_roots(t)
        phases = np.empty(2 * g.m, dtype=np.complex128)
        for i, c in enumerate(gamma.coeffs):
            phases[i] = roots[c]
            phases[i + g.m] = roots[(t - c) % t]
    return TwistedMatrix(phases[:, None] * structure, EDGE, t, gamma)


def trace_power(
    matrix: TwistedMatrix, power: int, imag_tol: float = DEFAULT_IMAG_TOL
) -> int | float:
    """trace(M^power) by repeated squaring, certified real.

    Exact integer matrices return an int; if their powering overflows int64
    the computation silently reruns in floating point.  Complex results must
    have |imag| <= imag_tol * (1 + |real|) or a ResidualError is raised.
    """
    if power < 1:
        raise PreconditionError("power must be >= 1")
    if matrix.exact:
        try:
            return trace_power_i64(matrix.data, power)
        except OverflowError:
            value = np.trace(
                np.linalg.matrix_power(matrix.data.astype(np.float64), power)
            )
            return float(value)
    value = complex(np.trace(np.linalg.matrix_power(matrix.data, power)))
    if abs(value.imag) > imag_tol * (1 + abs(value.real)):
        raise ResidualError(
            f"non-real trace: {value!r} for {matrix.kind} matrix power {power}"
        )
    return value.real


def spectrum(matrix: TwistedMatrix) -> np.ndarray:
    """Eigenvalue multiset via a dense solver, sorted ascending.

    Vertex matrices are Hermitian, so their spectrum is real; edge matrices
    may have complex pairs and are sorted by (real, imag).
    """
    data = matrix.as_complex()
    if matrix.kind == VERTEX:
        return np.sort(np.linalg.eigvalsh(data))
    values = np.linalg.eigvals(data)
    return values[np.lexsort((values.imag, values.real))]


def trace_table(
    matrix: TwistedMatrix, lengths, imag_tol: float = DEFAULT_IMAG_TOL
) -> dict[int, int | float]:
    """trace(M^l) for each requested l."""
    return {l: trace_power(matrix, l, imag_tol) for l in lengths}
