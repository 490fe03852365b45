"""Edge chains over Z/tZ, circulations, and the cotree coordinate map.

A chain stores one residue per positively oriented edge; traversing an edge
backward subtracts.  For t = 2 the sign is immaterial, so orientation never
matters there.  Circulations (chains balanced at every vertex) form the first
homology group of the graph, and restricting a circulation to the cotree of
any spanning tree is a bijection onto the free module on the cotree edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError
from .graphs import MultiGraph, SpanningTree, Walk, tree_path_codes


@dataclass(frozen=True)
class Chain:
    """Residue vector over the positively oriented edges, modulo t."""

    t: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.t < 2:
            raise PreconditionError(f"modulus must be >= 2, got {self.t}")
        if any(not (0 <= c < self.t) for c in self.coeffs):
            object.__setattr__(
                self, "coeffs", tuple(c % self.t for c in self.coeffs)
            )

    @classmethod
    def zero(cls, m: int, t: int) -> "Chain":
        return cls(t, (0,) * m)

    @classmethod
    def ones(cls, m: int, t: int) -> "Chain":
        return cls(t, (1,) * m)

    @classmethod
    def from_support(cls, m: int, t: int, indices: Iterable[int]) -> "Chain":
        coeffs = [0] * m
        for i in indices:
            coeffs[i] = 1
        return cls(t, tuple(coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "Chain") -> "Chain":
        _check_compatible(self, other)
        return Chain(
            self.t,
            tuple((a + b) % self.t for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "Chain":
        return Chain(self.t, tuple((-a) % self.t for a in self.coeffs))

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def restrict(self, subset: Sequence[int]) -> "Chain":
        """Zero every coefficient outside the given edge indices."""
        keep = set(subset)
        return Chain(
            self.t,
            tuple(c if i in keep else 0 for i, c in enumerate(self.coeffs)),
        )


def _check_compatible(a: Chain, b: Chain) -> None:
    if a.t != b.t:
        raise PreconditionError(f"modulus mismatch: {a.t} vs {b.t}")
    if len(a.coeffs) != len(b.coeffs):
        raise PreconditionError("chains live on different graphs")


def check_edge_subset(g: MultiGraph, subset: Sequence[int]) -> tuple[int, ...]:
    """Validate an ordered edge-index subset against g."""
    subset = tuple(int(i) for i in subset)
    if len(set(subset)) != len(subset):
        raise PreconditionError("edge subset has repeated indices")
    for i in subset:
        if not (0 <= i < g.m):
            raise PreconditionError(f"edge index out of range: {i}")
    return subset


def abelianization(g: MultiGraph, walk: Walk, t: int) -> Chain:
    """Signed edge-traversal counts of a walk, reduced mod t."""
    return Chain(t, tuple(c % t for c in abelianization_z(g, walk)))


def abelianization_z(g: MultiGraph, walk: Walk) -> tuple[int, ...]:
    """Integer abelianization: forward minus backward traversals per edge."""
    coeffs = [0] * g.m
    for step in walk.steps:
        coeffs[step.edge_index] += 1 if step.positive else -1
    return tuple(coeffs)


def is_circulation(g: MultiGraph, chain: Chain) -> bool:
    """Balance test: at each vertex, outgoing and incoming sums agree mod t.

    A loop contributes its coefficient to both sides, so it never unbalances.
    """
    if len(chain) != g.m:
        raise PreconditionError("chain length does not match edge count")
    out_sum = [0] * g.n
    in_sum = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        out_sum[u] += chain.coeffs[i]
        in_sum[v] += chain.coeffs[i]
    return all((o - i) % chain.t == 0 for o, i in zip(out_sum, in_sum))


def fundamental_cycle(g: MultiGraph, tree: SpanningTree, edge_index: int) -> Walk:
    """The circuit formed by a cotree edge and the tree path closing it."""
    if edge_index in tree.tree_edges:
        raise PreconditionError(f"edge {edge_index} is a tree edge")
    u, v = g.edges[edge_index]
    codes = [edge_index] + tree_path_codes(g, tree, v, u)
    return Walk(tuple(g.oriented(c) for c in codes))


def extend_to_circulation(
    g: MultiGraph, beta: Chain, tree: SpanningTree
) -> Chain:
    """The unique circulation restricting to ``beta`` on the cotree.

    ``beta`` must vanish on tree edges.  The extension is the beta-weighted
    sum of fundamental-cycle chains, computed in exact integers.
    """
    if len(beta) != g.m:
        raise PreconditionError("chain length does not match edge count")
    for i in tree.tree_edges:
        if beta.coeffs[i] != 0:
            raise PreconditionError(
                f"chain is not supported on the cotree (edge {i})"
            )
    total = [0] * g.m
    for i in tree.cotree_edges:
        c = beta.coeffs[i]
        if c == 0:
            continue
        for code in ([i] + tree_path_codes(g, tree, g.edges[i][1], g.edges[i][0])):
            if code < g.m:
                total[code] += c
            else:
                total[code - g.m] -= c
    return Chain(beta.t, tuple(x % beta.t for x in total))


def canonical_element(g: MultiGraph, tree: SpanningTree) -> Chain:
    """The mod-2 twist marking cotree edges whose closing tree path is even.

    A loop closes a path of length 0, hence is always marked.  The result is
    zero exactly when the graph is bipartite, and translating any twist by it
    negates the twisted adjacency spectra.
    """
    coeffs = [0] * g.m
    for i in tree.cotree_edges:
        u, v = g.edges[i]
        if len(tree_path_codes(g, tree, u, v)) % 2 == 0:
            coeffs[i] = 1
    return Chain(2, tuple(coeffs))


def coefficient_sum(chain: Chain, subset: Sequence[int] | None = None) -> int:
    """Sum of coefficients mod t, optionally over a subset of edges."""
    if subset is None:
        return sum(chain.coeffs) % chain.t
    return sum(chain.coeffs[i] for i in subset) % chain.t


def pairing(gamma: Chain, alpha: Chain) -> int:
    """Coefficientwise dot product mod t."""
    _check_compatible(gamma, alpha)
    return sum(a * b for a, b in zip(gamma.coeffs, alpha.coeffs)) % gamma.t


def twist_space(
    m: int, t: int, subset: Sequence[int], start: int = 0, stop: int | None = None
) -> Iterable[Chain]:
    """Chains supported on ``subset`` in little-endian mixed-radix order.

    Index k maps to digits d_i = (k // t**i) % t placed at subset[i]; the
    first listed subset edge is the fastest-cycling digit.
    """
    total = t ** len(subset)
    if stop is None:
        stop = total
    for k in range(start, stop):
        yield chain_from_digits(m, t, subset, digits_of(k, t, len(subset)))


def digits_of(k: int, t: int, width: int) -> tuple[int, ...]:
    digits = []
    for _ in range(width):
        k, d = divmod(k, t)
        digits.append(d)
    return tuple(digits)


def chain_from_digits(
    m: int, t: int, subset: Sequence[int], digits: Sequence[int]
) -> Chain:
    coeffs = [0] * m
    for i, d in zip(subset, digits):
        coeffs[i] = d % t
    return Chain(t, tuple(coeffs))
