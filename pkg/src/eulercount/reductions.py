"""Cutting down the twist sums: spectral antisymmetry and automorphism orbits.

Two symmetries make most twists redundant.  Translating any mod-2 twist by
the canonical element negates both twisted spectra, so on a non-bipartite
Eulerian graph half the twists suffice.  A graph automorphism permutes
twists without changing traces (the matrices are similar), so one trace
evaluation per orbit suffices.  Both reductions combine.

Orbits are computed by closure in the full chain space and then restricted
to the twist set under consideration: a generator may carry a cotree twist
through tree-supported chains on its way around the orbit, and only the
members inside the set matter for the sums.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .census import (
    DEFAULT_COUNT_TOL,
    DEFAULT_TERM_BUDGET,
    CountReport,
    round_count,
    _raw_value,
)
from .errors import BudgetError, PreconditionError
from .eulerian import Orientation, is_eulerian_orientation
from .graphs import MultiGraph, SpanningTree, default_spanning_tree
from .homology import Chain, canonical_element, check_edge_subset, twist_space
from .twists import (
    DEFAULT_IMAG_TOL,
    EDGE,
    VERTEX,
    _unit_roots,
    edge_matrix,
    trace_power,
    vertex_matrix,
)


@dataclass(frozen=True)
class GraphAutomorphism:
    """Compatible vertex and edge permutations with orientation bookkeeping.

    ``flip[i]`` records whether the image of edge i runs against its own
    reference direction, which is what negates chain coefficients.
    """

    vertex_perm: tuple[int, ...]
    edge_perm: tuple[int, ...]
    flip: tuple[bool, ...]

    @classmethod
    def from_perms(
        cls, g: MultiGraph, vertex_perm: Sequence[int], edge_perm: Sequence[int]
    ) -> "GraphAutomorphism":
        """Validate the permutation pair against g and derive the flips."""
        vperm = tuple(int(x) for x in vertex_perm)
        eperm = tuple(int(x) for x in edge_perm)
        if sorted(vperm) != list(range(g.n)):
            raise PreconditionError("vertex_perm is not a permutation")
        if sorted(eperm) != list(range(g.m)):
            raise PreconditionError("edge_perm is not a permutation")
        flips = []
        for i, (u, v) in enumerate(g.edges):
            iu, iv = vperm[u], vperm[v]
            tu, tv = g.edges[eperm[i]]
            if (iu, iv) == (tu, tv):
                flips.append(False)
            elif (iu, iv) == (tv, tu):
                flips.append(iu != iv)
            else:
                raise PreconditionError(
                    f"edge {i} maps to edge {eperm[i]} with mismatched endpoints"
                )
        return cls(vperm, eperm, tuple(flips))

    def apply_chain(self, chain: Chain) -> Chain:
        """Transport coefficients along the edge permutation, negating flips."""
        t = chain.t
        out = [0] * len(chain.coeffs)
        for i, c in enumerate(chain.coeffs):
            j = self.edge_perm[i]
            out[j] = (t - c) % t if self.flip[i] else c
        return Chain(t, tuple(out))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.vertex_perm)) and all(
            p == i for i, p in enumerate(self.edge_perm)
        )


def identity_automorphism(g: MultiGraph) -> GraphAutomorphism:
    return GraphAutomorphism(
        tuple(range(g.n)), tuple(range(g.m)), (False,) * g.m
    )


def find_automorphisms(
    g: MultiGraph, max_vertices: int = 8
) -> list[GraphAutomorphism]:
    """The full automorphism group by brute force.

    Enumerates vertex bijections preserving the adjacency multiplicities,
    then every edge bijection within each parallel class.  Intended for
    small graphs; beyond the budget callers must supply generators.
    """
    if g.n > max_vertices:
        raise BudgetError(
            f"{g.n} vertices exceed the automorphism budget {max_vertices}; "
            "supply generators explicitly"
        )
    mult = g.multiplicity()
    classes: dict[tuple[int, int], list[int]] = {}
    for i, (u, v) in enumerate(g.edges):
        classes.setdefault((u, v) if u <= v else (v, u), []).append(i)
    keys = sorted(classes)

    found = []
    for vperm in itertools.permutations(range(g.n)):
        image_ok = True
        for (u, v), count in mult.items():
            iu, iv = vperm[u], vperm[v]
            key = (iu, iv) if iu <= iv else (iv, iu)
            if mult.get(key) != count:
                image_ok = False
                break
        if not image_ok:
            continue
        per_class = []
        for u, v in keys:
            iu, iv = vperm[u], vperm[v]
            target = classes[(iu, iv) if iu <= iv else (iv, iu)]
            per_class.append(list(itertools.permutations(target)))
        for assignment in itertools.product(*per_class):
            eperm = [0] * g.m
            for key, images in zip(keys, assignment):
                for src, dst in zip(classes[key], images):
                    eperm[src] = dst
            found.append(GraphAutomorphism.from_perms(g, vperm, eperm))
    found.sort(key=lambda a: (a.vertex_perm, a.edge_perm))
    return found


@dataclass
class Orbit:
    """One twist-set orbit: smallest member first, all members kept."""

    representative: Chain
    size: int
    members: tuple[Chain, ...]


@dataclass
class OrbitPartition:
    orbits: list[Orbit]
    total: int


def orbit_partition(
    g: MultiGraph,
    space: Iterable[Chain],
    generators: Sequence[GraphAutomorphism],
    include_canonical: bool = False,
    tree: SpanningTree | None = None,
) -> OrbitPartition:
    """Partition a twist set by the group the generators (and optionally the
    canonical translation) generate.

    Closure runs in the ambient chain space; each part is the ambient orbit
    intersected with the set.  Parts are ordered by their lexicographically
    smallest member.
    """
    for tau in generators:
        _check_generator(g, tau)
    translation = None
    if include_canonical:
        if tree is None:
            tree = default_spanning_tree(g)
        translation = canonical_element(g, tree)
        if translation.is_zero():
            raise PreconditionError(
                "graph bipartite: antisymmetry reduction inapplicable"
            )
    chains = list(space)
    index = {c.coeffs: k for k, c in enumerate(chains)}
    if translation is not None and chains and chains[0].t != 2:
        raise PreconditionError("canonical translation only exists mod 2")

    assigned = [False] * len(chains)
    orbits: list[Orbit] = []
    for k, start in enumerate(chains):
        if assigned[k]:
            continue
        seen = {start.coeffs}
        stack = [start]
        while stack:
            current = stack.pop()
            images = [tau.apply_chain(current) for tau in generators]
            if translation is not None:
                images.append(current + translation)
            for img in images:
                if img.coeffs not in seen:
                    seen.add(img.coeffs)
                    stack.append(img)
        members = sorted(
            (chains[index[c]] for c in seen if c in index),
            key=lambda ch: ch.coeffs,
        )
        for member in members:
            assigned[index[member.coeffs]] = True
        orbits.append(Orbit(members[0], len(members), tuple(members)))
    orbits.sort(key=lambda o: o.representative.coeffs)
    return OrbitPartition(orbits, sum(o.size for o in orbits))


def _check_generator(g: MultiGraph, tau: GraphAutomorphism) -> None:
    if len(tau.vertex_perm) != g.n or len(tau.edge_perm) != g.m:
        raise PreconditionError("generator does not match the graph")
    # re-derive flips; raises if incidence fails
    rebuilt = GraphAutomorphism.from_perms(g, tau.vertex_perm, tau.edge_perm)
    if rebuilt.flip != tau.flip:
        raise PreconditionError("generator flips do not match its permutations")


@dataclass
class AntisymPartition:
    """The two-way split of the cotree twists used by the half sum.

    ``dropped_edge`` is the lowest-index cotree edge in the support of the
    canonical element; s1 holds the twists with coefficient 0 there, and
    translation by the canonical element swaps s1 and s2.
    """

    dropped_edge: int
    canonical: Chain
    s1: tuple[Chain, ...]
    s2: tuple[Chain, ...]


def antisym_partition(
    g: MultiGraph, tree: SpanningTree | None = None
) -> AntisymPartition:
    if tree is None:
        tree = default_spanning_tree(g)
    gamma = canonical_element(g, tree)
    support = gamma.support()
    if not support:
        raise PreconditionError(
            "graph bipartite: antisymmetry reduction inapplicable"
        )
    dropped = support[0]
    s1 = []
    s2 = []
    for chain in twist_space(g.m, 2, tree.cotree_edges):
        (s2 if chain.coeffs[dropped] else s1).append(chain)
    return AntisymPartition(dropped, gamma, tuple(s1), tuple(s2))


def _signed_trace_total(
    g: MultiGraph,
    chains: Iterable[Chain],
    length: int,
    method: str,
    exact: bool,
    imag_tol: float,
):
    """Sum of (-1)^(coefficient sum) * trace over mod-2 twists."""
    build = vertex_matrix if method == VERTEX else edge_matrix
    total: int | float = 0
    terms = 0
    for gamma in chains:
        tr = trace_power(build(g, gamma, exact=exact), length, imag_tol)
        total += tr if sum(gamma.coeffs) % 2 == 0 else -tr
        terms += 1
    return total, terms


def count_eulerian_antisym(
    g: MultiGraph,
    tree: SpanningTree | None = None,
    method: str = EDGE,
    which: int = 1,
    *,
    exact: bool | None = None,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
) -> CountReport:
    """Eulerian cycles from half the twists, denominator m * 2^(genus-1)."""
    if not g.is_eulerian():
        raise PreconditionError("graph not Eulerian")
    if which not in (1, 2):
        raise PreconditionError("which must be 1 or 2")
    started = time.perf_counter()
    if tree is None:
        tree = default_spanning_tree(g)
    part = antisym_partition(g, tree)
    chains = part.s1 if which == 1 else part.s2
    if exact is None:
        exact = True
    total, terms = _signed_trace_total(g, chains, g.m, method, exact, imag_tol)
    denominator = g.m * 2 ** (g.genus() - 1)
    count, residual = round_count(total, denominator, tolerance)
    return CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=2,
        length=g.m,
        terms=terms,
        denominator=denominator,
        subset=tree.cotree_edges,
        alpha=(1,) * len(tree.cotree_edges),
        exact=exact,
        seconds=time.perf_counter() - started,
        notes={
            "tree": sorted(tree.tree_edges),
            "kind": "eulerian-cycles-antisym",
            "half": which,
            "dropped_edge": part.dropped_edge,
        },
    )


def _oriented_digit_sum(chain: Chain, subset, flips) -> int:
    t = chain.t
    total = 0
    for i, flip in zip(subset, flips):
        c = chain.coeffs[i]
        total += (t - c) % t if flip else c
    return total % t


def count_eulerian_reduced(
    g: MultiGraph,
    tree: SpanningTree | None = None,
    generators: Sequence[GraphAutomorphism] = (),
    mode: str = "aut",
    method: str = EDGE,
    *,
    t: int = 2,
    orient: Orientation | None = None,
    exact: bool | None = None,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> CountReport:
    """Eulerian cycles with one trace evaluation per twist orbit.

    mode "aut" partitions all cotree twists by the generated group
    (denominator m * t^genus); "antisym" is the plain half sum; "combined"
    adds the canonical translation to the group, non-bipartite mod-2 only.
    With ``orient`` and t >= 3 the directed analog runs in mode "aut", where
    each orbit must have a constant orientation-relative digit sum.
    """
    if not g.is_eulerian():
        raise PreconditionError("graph not Eulerian")
    if mode == "antisym":
        return count_eulerian_antisym(
            g, tree, method,
            exact=exact, tolerance=tolerance, imag_tol=imag_tol,
        )
    if mode not in ("aut", "combined"):
        raise PreconditionError(f"unknown reduction mode: {mode}")
    directed = orient is not None
    if directed:
        if t < 3:
            raise PreconditionError("t must be >= 3 for the directed count")
        if mode != "aut":
            raise PreconditionError(
                "directed reduction only combines with mode 'aut'"
            )
        if not is_eulerian_orientation(g, orient):
            raise PreconditionError("orientation not Eulerian")
    elif t != 2:
        raise PreconditionError("undirected reduction uses t = 2")

    started = time.perf_counter()
    if tree is None:
        tree = default_spanning_tree(g)
    subset = tree.cotree_edges
    if t ** len(subset) > term_budget:
        raise BudgetError(f"{t ** len(subset)} twists exceed the budget")
    partition = orbit_partition(
        g,
        twist_space(g.m, t, subset),
        generators,
        include_canonical=(mode == "combined"),
        tree=tree,
    )
    if exact is None:
        exact = t == 2
    flips = (
        tuple(orient.flips[i] for i in subset)
        if directed
        else (False,) * len(subset)
    )
    build = vertex_matrix if method == VERTEX else edge_matrix
    roots = None if exact else _unit_roots(t)
    total: int | float | complex = 0
    for orbit in partition.orbits:
        rep = orbit.representative
        sigma = _oriented_digit_sum(rep, subset, flips)
        if directed or t != 2:
            values = {
                _oriented_digit_sum(member, subset, flips)
                for member in orbit.members
            }
            if len(values) > 1:
                raise PreconditionError(
                    "digit sum not constant on an orbit; a generator is "
                    "invalid for this reduction"
                )
        tr = trace_power(build(g, rep, exact=exact), g.m, imag_tol)
        if exact:
            total += orbit.size * (tr if sigma % 2 == 0 else -tr)
        else:
            total += orbit.size * roots[(t - sigma) % t] * tr
    denominator = g.m * t ** g.genus()
    count, residual = round_count(total, denominator, tolerance)
    return CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=t,
        length=g.m,
        terms=len(partition.orbits),
        denominator=denominator,
        subset=subset,
        alpha=(1,) * len(subset),
        exact=exact,
        seconds=time.perf_counter() - started,
        flips=orient.flips if directed else None,
        notes={
            "tree": sorted(tree.tree_edges),
            "kind": f"eulerian-cycles-reduced-{mode}",
            "orbits": len(partition.orbits),
        },
    )


def count_class_reduced(
    g: MultiGraph,
    subset: Sequence[int],
    alpha: Chain,
    length: int,
    t: int,
    generators: Sequence[GraphAutomorphism] = (),
    method: str = EDGE,
    *,
    exact: bool | None = None,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> CountReport:
    """Class census with orbit grouping under a subset-stabilizing group.

    The per-orbit weight is the character sum over every orbit member, not
    the orbit size times the representative's character; the two only agree
    when alpha pairs equally with all members (as for the all-ones class).
    """
    started = time.perf_counter()
    subset = check_edge_subset(g, subset)
    if alpha.t != t:
        raise PreconditionError("alpha modulus does not match t")
    if set(alpha.support()) - set(subset):
        raise PreconditionError("alpha not supported on the subset")
    for tau in generators:
        _check_generator(g, tau)
        if {tau.edge_perm[i] for i in subset} != set(subset):
            raise PreconditionError("generators do not stabilize F")
    if t ** len(subset) > term_budget:
        raise BudgetError(f"{t ** len(subset)} twists exceed the budget")
    if exact is None:
        exact = t == 2
    partition = orbit_partition(g, twist_space(g.m, t, subset), generators)
    build = vertex_matrix if method == VERTEX else edge_matrix
    roots = None if exact else _unit_roots(t)
    total: int | float | complex = 0
    for orbit in partition.orbits:
        if exact:
            weight = sum(
                1 if pairing_mod(member, alpha) % 2 == 0 else -1
                for member in orbit.members
            )
        else:
            weight = sum(
                roots[(t - pairing_mod(member, alpha)) % t]
                for member in orbit.members
            )
        tr = trace_power(
            build(g, orbit.representative, exact=exact), length, imag_tol
        )
        total += weight * tr
    denominator = t ** len(subset)
    count, residual = round_count(total, denominator, tolerance)
    return CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=t,
        length=length,
        terms=len(partition.orbits),
        denominator=denominator,
        subset=subset,
        alpha=tuple(alpha.coeffs[i] for i in subset),
        exact=exact,
        seconds=time.perf_counter() - started,
        notes={"kind": "class-reduced", "orbits": len(partition.orbits)},
    )


def pairing_mod(gamma: Chain, alpha: Chain) -> int:
    return sum(a * b for a, b in zip(gamma.coeffs, alpha.coeffs)) % gamma.t


def load_generators(g: MultiGraph, text: str) -> list[GraphAutomorphism]:
    """Parse a JSON list of {vertex_perm, edge_perm} into validated generators."""
    import json

    from .errors import GraphParseError

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"bad generators JSON: {exc}") from None
    if not isinstance(raw, list):
        raise GraphParseError("generators file must hold a JSON list")
    gens = []
    for entry in raw:
        try:
            vperm = entry["vertex_perm"]
            eperm = entry["edge_perm"]
        except (TypeError, KeyError):
            raise GraphParseError(
                "each generator needs vertex_perm and edge_perm"
            ) from None
        gens.append(GraphAutomorphism.from_perms(g, vperm, eperm))
    return gens
