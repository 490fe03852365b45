"""Twisted matrices: golden entries, traces, spectra, symmetries."""

import random

import numpy as np
import pytest

import eulercount as ec
from eulercount.errors import PreconditionError, ResidualError
from eulercount.homology import Chain, canonical_element
from eulercount.reductions import find_automorphisms
from eulercount.twists import (
    EDGE,
    TwistedMatrix,
    edge_matrix,
    spectrum,
    trace_power,
    vertex_matrix,
)

from conftest import random_multigraph


def spectra_match(a, b, tol=1e-8):
    """Multiset comparison; sorted order is unstable for conjugate pairs."""
    remaining = list(b)
    for x in a:
        j = min(range(len(remaining)), key=lambda k: abs(x - remaining[k]))
        if abs(x - remaining[j]) > tol:
            return False
        remaining.pop(j)
    return not remaining


# the worked 4-vertex example: gamma = e1 + 2*e2 + 3*e3 + 2*e5 + e6 + 3*e7 mod 4
GAMMA4 = Chain(4, (0, 1, 2, 3, 0, 2, 1, 3))
# its image under the automorphism swapping v0<->v2, v1<->v3
TAU_GAMMA4 = Chain(4, (1, 2, 1, 0, 1, 3, 2, 0))

A_GAMMA = np.array([
    [0, 1, -1 - 1j, -1j],
    [1, 0, 1, -1 - 1j],
    [-1 + 1j, 1, 0, -1j],
    [1j, -1 + 1j, 1j, 0],
])

A_TAU_GAMMA = np.array([
    [0, -1j, -1 + 1j, 1],
    [1j, 0, 1j, -1 + 1j],
    [-1 - 1j, -1j, 0, 1],
    [1, -1 - 1j, 1, 0],
])

# rows of the 16x16 twisted edge matrix: {column: weight}
W_GAMMA_ROWS = {
    0: ({2: 1, 3: 1, 9: 1}),
    1: ({2: 1j, 3: 1j, 8: 1j}),
    2: ({1: -1, 7: -1, 12: -1}),
    3: ({5: -1j, 6: -1j, 15: -1j}),
    4: ({1: 1, 7: 1, 10: 1}),
    5: ({0: -1, 4: -1, 14: -1}),
    6: ({0: 1j, 4: 1j, 13: 1j}),
    7: ({5: -1j, 6: -1j, 11: -1j}),
    8: ({4: 1, 13: 1, 14: 1}),
    9: ({7: -1j, 10: -1j, 12: -1j}),
    10: ({3: -1, 8: -1, 9: -1}),
    11: ({2: 1j, 8: 1j, 9: 1j}),
    12: ({0: 1, 13: 1, 14: 1}),
    13: ({6: -1, 11: -1, 15: -1}),
    14: ({5: -1j, 11: -1j, 15: -1j}),
    15: ({1: 1j, 10: 1j, 12: 1j}),
}


def test_vertex_matrix_golden(g2):
    a = vertex_matrix(g2, GAMMA4).data
    assert np.array_equal(a, A_GAMMA)


def test_vertex_matrix_golden_image(g2):
    a = vertex_matrix(g2, TAU_GAMMA4).data
    assert np.array_equal(a, A_TAU_GAMMA)
    # similar matrices: identical real spectra
    s1 = spectrum(vertex_matrix(g2, GAMMA4))
    s2 = spectrum(vertex_matrix(g2, TAU_GAMMA4))
    assert np.allclose(s1, s2, atol=1e-8)


def test_edge_matrix_golden(g2):
    w = edge_matrix(g2, GAMMA4).data
    assert w.shape == (16, 16)
    for i in range(16):
        expected = np.zeros(16, dtype=complex)
        for j, value in W_GAMMA_ROWS[i].items():
            expected[j] = value
        assert np.array_equal(w[i], expected), f"row {i}"


def test_edge_matrix_image_similar(g2):
    # the printed image matrix has a typo upstream; assert similarity instead
    w1 = edge_matrix(g2, GAMMA4)
    w2 = edge_matrix(g2, TAU_GAMMA4)
    assert spectra_match(spectrum(w1), spectrum(w2))
    for length in (1, 2, 3, 8):
        assert trace_power(w1, length) == pytest.approx(
            trace_power(w2, length), abs=1e-7
        )


def test_zero_twist_reproduces_adjacency(g2):
    a = vertex_matrix(g2, Chain.zero(8, 2)).data
    assert a.dtype == np.int64
    assert np.array_equal(a, np.array([
        [0, 1, 2, 1],
        [1, 0, 1, 2],
        [2, 1, 0, 1],
        [1, 2, 1, 0],
    ]))
    w = edge_matrix(g2, Chain.zero(8, 2)).data
    assert set(np.unique(w)) <= {0, 1}
    # row sums: each oriented edge feeds deg(head) - 1 successors
    for code in range(16):
        head = g2.terminal_of_code(code)
        assert w[code].sum() == g2.degree(head) - 1


def test_single_loop_matrices():
    g = ec.MultiGraph(1, [(0, 0)])
    w = edge_matrix(g, Chain.zero(1, 2)).data
    assert np.array_equal(w, np.eye(2, dtype=np.int64))
    a = vertex_matrix(g, Chain(4, (1,)))
    assert a.data.shape == (1, 1)
    assert a.data[0, 0] == 0  # i + (-i)


def test_trace_power_golden_integers(g2):
    zero = Chain.zero(8, 2)
    assert trace_power(edge_matrix(g2, zero), 8) == 6800
    assert trace_power(vertex_matrix(g2, zero), 8) == 66048
    e2 = Chain.from_support(8, 2, (2,))
    assert trace_power(edge_matrix(g2, e2), 8) == -112
    assert trace_power(vertex_matrix(g2, e2), 8) == 12288
    # results are exact ints on the mod-2 path
    assert isinstance(trace_power(edge_matrix(g2, e2), 8), int)


def test_trace_power_float_path_matches(g2):
    e2 = Chain.from_support(8, 2, (2,))
    w_float = edge_matrix(g2, e2, exact=False)
    assert w_float.data.dtype == np.complex128
    assert trace_power(w_float, 8) == pytest.approx(-112, abs=1e-6)


def test_trace_power_requires_positive_power(g2):
    with pytest.raises(PreconditionError):
        trace_power(edge_matrix(g2, Chain.zero(8, 2)), 0)


def test_trace_power_rejects_nonreal():
    fake = TwistedMatrix(np.array([[1j]]), EDGE, 4, Chain(4, (1,)))
    with pytest.raises(ResidualError, match="non-real"):
        trace_power(fake, 1)


def test_trace_power_overflow_falls_back_to_float():
    big = np.diag([2**40, 2**40]).astype(np.int64)
    fake = TwistedMatrix(big, EDGE, 2, Chain(2, (0,)))
    value = trace_power(fake, 2)
    assert isinstance(value, float)
    assert value == pytest.approx(2.0 * 2**80, rel=1e-12)


def test_hermitian_exact_random():
    rng = random.Random(41)
    for _ in range(60):
        g = random_multigraph(rng)
        t = rng.choice((2, 3, 4, 5, 6, 7))
        gamma = Chain(t, tuple(rng.randrange(t) for _ in range(g.m)))
        a = vertex_matrix(g, gamma, exact=False).data
        assert np.array_equal(a, a.conj().T)


def test_spectrum_c4_cycle():
    c4 = ec.MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    values = spectrum(vertex_matrix(c4, Chain.zero(4, 2)))
    assert np.allclose(values, [-2, 0, 0, 2], atol=1e-9)


def test_spectrum_power_sums_match_traces():
    rng = random.Random(43)
    for _ in range(15):
        g = random_multigraph(rng)
        t = rng.choice((2, 3, 4))
        gamma = Chain(t, tuple(rng.randrange(t) for _ in range(g.m)))
        for build in (vertex_matrix, edge_matrix):
            m = build(g, gamma, exact=False)
            values = spectrum(m)
            for length in range(1, min(g.m, 5) + 1):
                assert np.sum(values ** length).real == pytest.approx(
                    trace_power(m, length), abs=1e-6
                )


def test_edge_spectrum_conjugate_pairs():
    rng = random.Random(47)
    for _ in range(20):
        g = random_multigraph(rng)
        t = rng.choice((3, 4, 5))
        gamma = Chain(t, tuple(rng.randrange(t) for _ in range(g.m)))
        values = spectrum(edge_matrix(g, gamma))
        assert spectra_match(values, values.conj())


def test_spectral_antisymmetry():
    rng = random.Random(53)
    checked = 0
    for _ in range(60):
        g = random_multigraph(rng)
        if g.is_bipartite():
            continue
        tree = ec.random_spanning_tree(g, rng)
        gamma_t = canonical_element(g, tree)
        gamma = Chain(2, tuple(rng.randrange(2) for _ in range(g.m)))
        shifted = gamma + gamma_t
        for build in (vertex_matrix, edge_matrix):
            s_base = spectrum(build(g, gamma, exact=False))
            s_shift = spectrum(build(g, shifted, exact=False))
            assert spectra_match(-s_shift, s_base)
            for length in (1, 2, 3, 4):
                lhs = trace_power(build(g, shifted), length)
                rhs = (-1) ** length * trace_power(build(g, gamma), length)
                assert lhs == pytest.approx(rhs, abs=1e-7)
        checked += 1
    assert checked >= 20


def test_similarity_under_automorphisms():
    rng = random.Random(59)
    for _ in range(10):
        g = random_multigraph(rng, max_n=4, max_m=6)
        autos = find_automorphisms(g)
        taus = [a for a in autos if not a.is_identity()][:3]
        t = rng.choice((2, 3, 4))
        gamma = Chain(t, tuple(rng.randrange(t) for _ in range(g.m)))
        for tau in taus:
            image = tau.apply_chain(gamma)
            for build in (vertex_matrix, edge_matrix):
                s1 = spectrum(build(g, gamma, exact=False))
                s2 = spectrum(build(g, image, exact=False))
                assert spectra_match(s1, s2)


def test_twisted_trace_is_character_sum():
    rng = random.Random(67)
    from eulercount.homology import abelianization, pairing
    from eulercount.oracle import enumerate_circuits, enumerate_closed_walks

    for _ in range(12):
        g = random_multigraph(rng, max_n=4, max_m=5)
        t = rng.choice((2, 3, 4))
        gamma = Chain(t, tuple(rng.randrange(t) for _ in range(g.m)))
        root = np.exp(2j * np.pi / t)
        for length in range(1, 5):
            _, circuits = enumerate_circuits(g, length, collect=True)
            _, walks = enumerate_closed_walks(g, length, collect=True)
            for build, closed in ((edge_matrix, circuits),
                                  (vertex_matrix, walks)):
                expected = sum(
                    root ** pairing(gamma, abelianization(g, w, t))
                    for w in closed
                )
                got = trace_power(build(g, gamma, exact=False), length)
                assert got == pytest.approx(expected.real, abs=1e-7)
                assert abs(expected.imag) < 1e-7


def test_orthogonality_relation():
    rng = random.Random(61)
    from eulercount.homology import abelianization, pairing, twist_space
    from eulercount.oracle import enumerate_closed_walks

    for _ in range(12):
        g = random_multigraph(rng, max_n=4, max_m=5)
        t = rng.choice((2, 3, 4))
        size = rng.randint(1, min(3, g.m))
        subset = tuple(sorted(rng.sample(range(g.m), size)))
        alpha = Chain(t, tuple(
            rng.randrange(t) if i in subset else 0 for i in range(g.m)
        ))
        length = rng.randint(1, 4)
        _, walks = enumerate_closed_walks(g, length, collect=True)
        if not walks:
            continue
        for walk in walks[:5]:
            ab = abelianization(g, walk, t)
            total = 0
            for gamma in twist_space(g.m, t, subset):
                root = np.exp(2j * np.pi / t)
                total += root ** (-pairing(gamma, alpha)) * (
                    root ** pairing(gamma, ab)
                )
            expected = t ** size if ab.restrict(subset) == alpha.restrict(
                subset
            ) else 0
            assert abs(total - expected) <= 1e-8 * t ** size
