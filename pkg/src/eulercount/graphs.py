"""Connected multigraphs with loops, oriented edges, spanning trees, and walks.

Edges are indexed 0..m-1 in input order, and each line ``u v`` fixes the
reference orientation of its edge as u -> v.  Oriented edges are encoded as
integer codes: code ``i < m`` is edge i traversed forward, code ``i + m`` is
edge i traversed backward.  This doubles as the row/column order of the edge
adjacency matrices.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphParseError, PreconditionError


@dataclass(frozen=True)
class OrientedEdge:
    """One of the two traversal directions of an edge."""

    edge_index: int
    positive: bool = True

    def inverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge_index, not self.positive)


class MultiGraph:
    """A connected finite multigraph; loops and parallel edges are allowed.

    ``edges`` is a sequence of (u, v) endpoint pairs with 0-based vertex
    indices; u == v makes a loop.  The sequence order defines edge indices
    and the reference orientation.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if n < 1:
            raise PreconditionError("graph needs at least one vertex")
        if not edges:
            raise PreconditionError("graph needs at least one edge")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(
                    f"edge endpoint out of range: ({u}, {v}) with n={n}"
                )
        self.n = n
        self.edges = edges
        self.m = len(edges)
        # oriented-edge codes with initial vertex v, lowest edge index first
        out: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            out[u].append(i)
            out[v].append(i + self.m)
        self._out = tuple(
            tuple(sorted(codes, key=lambda c: (c % self.m, c))) for codes in out
        )
        self._degrees = tuple(len(codes) for codes in self._out)
        if not self._connected():
            raise PreconditionError("graph not connected")

    def _connected(self) -> bool:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for code in self._out[v]:
                w = self.terminal_of_code(code)
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        return all(seen)

    # -- oriented-edge codes ------------------------------------------------

    def code(self, e: OrientedEdge) -> int:
        return e.edge_index if e.positive else e.edge_index + self.m

    def oriented(self, code: int) -> OrientedEdge:
        if code < self.m:
            return OrientedEdge(code, True)
        return OrientedEdge(code - self.m, False)

    def inverse_code(self, code: int) -> int:
        return code - self.m if code >= self.m else code + self.m

    def initial_of_code(self, code: int) -> int:
        u, v = self.edges[code % self.m]
        return u if code < self.m else v

    def terminal_of_code(self, code: int) -> int:
        u, v = self.edges[code % self.m]
        return v if code < self.m else u

    def initial(self, e: OrientedEdge) -> int:
        return self.initial_of_code(self.code(e))

    def terminal(self, e: OrientedEdge) -> int:
        return self.terminal_of_code(self.code(e))

    def out_codes(self, v: int) -> tuple[int, ...]:
        """Codes of all oriented edges leaving v (a loop appears twice)."""
        return self._out[v]

    def oriented_edges(self) -> Iterable[OrientedEdge]:
        for i in range(self.m):
            yield OrientedEdge(i, True)
        for i in range(self.m):
            yield OrientedEdge(i, False)

    # -- basic invariants ----------------------------------------------------

    def genus(self) -> int:
        """First Betti number m - n + 1, the number of independent cycles."""
        return self.m - self.n + 1

    def degree(self, v: int) -> int:
        """Vertex degree; a loop contributes 2."""
        return self._degrees[v]

    def is_eulerian(self) -> bool:
        """True iff every vertex degree is even (the graph is connected)."""
        return all(d % 2 == 0 for d in self._degrees)

    def is_bipartite(self) -> bool:
        """2-colorability; any loop makes the graph non-bipartite."""
        color = [-1] * self.n
        color[0] = 0
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for code in self._out[v]:
                w = self.terminal_of_code(code)
                if w == v:
                    return False
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
        return True

    def multiplicity(self) -> dict[tuple[int, int], int]:
        """Edge count per unordered endpoint pair; loops keyed as (v, v)."""
        mult: dict[tuple[int, int], int] = {}
        for u, v in self.edges:
            key = (u, v) if u <= v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        return mult

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __reduce__(self):
        return (MultiGraph, (self.n, self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m}, genus={self.genus()})"


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree given by its edge-index set; cotree indices ascend."""

    tree_edges: frozenset[int]
    cotree_edges: tuple[int, ...]

    def __post_init__(self):
        if self.tree_edges & set(self.cotree_edges):
            raise PreconditionError("tree and cotree edge sets overlap")


@dataclass(frozen=True)
class Walk:
    """A sequence of oriented edges with matching ends."""

    steps: tuple[OrientedEdge, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def is_valid(self, g: MultiGraph) -> bool:
        return all(
            g.terminal(a) == g.initial(b)
            for a, b in zip(self.steps, self.steps[1:])
        )

    def is_closed(self, g: MultiGraph) -> bool:
        return (
            bool(self.steps)
            and self.is_valid(g)
            and g.terminal(self.steps[-1]) == g.initial(self.steps[0])
        )

    def is_circuit(self, g: MultiGraph) -> bool:
        """Closed, no backtrack at any step, and no tail at the seam."""
        if not self.is_closed(g):
            return False
        if any(b == a.inverse() for a, b in zip(self.steps, self.steps[1:])):
            return False
        return self.steps[-1] != self.steps[0].inverse()

    def reverse(self) -> "Walk":
        return Walk(tuple(e.inverse() for e in reversed(self.steps)))


def parse_graph(text: str) -> MultiGraph:
    """Parse the graph text format, ignoring any spanning-tree line.

    Format: a header line ``n m``, then m lines ``u v``; ``#`` starts a
    comment line; an optional ``tree i1 ... i(n-1)`` line is accepted (use
    :func:`parse_graph_file` to retrieve it).
    """
    return parse_graph_file(text)[0]


def parse_graph_file(text: str) -> tuple[MultiGraph, SpanningTree | None]:
    """Parse graph text, returning the graph and its optional tree line."""
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphParseError("empty graph text")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError(f"bad header line: {lines[0]!r} (want 'n m')")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(f"bad header line: {lines[0]!r}") from None

    edges = []
    tree_indices: list[int] | None = None
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "tree":
            try:
                tree_indices = [int(p) for p in parts[1:]]
            except ValueError:
                raise GraphParseError(f"bad tree line: {line!r}") from None
            continue
        if len(parts) != 2:
            raise GraphParseError(f"bad edge line: {line!r} (want 'u v')")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphParseError(f"bad edge line: {line!r}") from None
    if len(edges) != m:
        raise GraphParseError(f"header says m={m} but found {len(edges)} edges")

    g = MultiGraph(n, edges)
    tree = None
    if tree_indices is not None:
        tree = spanning_tree_from_edges(g, tree_indices)
    return g, tree


def load_graph(path: str) -> tuple[MultiGraph, SpanningTree | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_file(fh.read())


def default_spanning_tree(g: MultiGraph) -> SpanningTree:
    """Breadth-first tree rooted at vertex 0, lowest edge index first.

    Deterministic, so labeled examples reproduce across runs.
    """
    seen = [False] * g.n
    seen[0] = True
    tree: set[int] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for code in g.out_codes(v):
            w = g.terminal_of_code(code)
            if not seen[w]:
                seen[w] = True
                tree.add(code % g.m)
                queue.append(w)
    return _finish_tree(g, tree)


def random_spanning_tree(g: MultiGraph, rng: random.Random) -> SpanningTree:
    """A spanning tree grown with randomly shuffled edge preference."""
    order = list(range(g.m))
    rng.shuffle(order)
    rank = {i: r for r, i in enumerate(order)}
    seen = [False] * g.n
    seen[0] = True
    tree: set[int] = set()
    frontier = [0]
    while frontier:
        candidates = [
            code
            for v in frontier
            for code in g.out_codes(v)
            if not seen[g.terminal_of_code(code)]
        ]
        if not candidates:
            break
        code = min(candidates, key=lambda c: rank[c % g.m])
        w = g.terminal_of_code(code)
        seen[w] = True
        tree.add(code % g.m)
        frontier.append(w)
    return _finish_tree(g, tree)


def spanning_tree_from_edges(g: MultiGraph, indices: Iterable[int]) -> SpanningTree:
    """Validate an explicit edge-index list as a spanning tree of g."""
    tree = set(int(i) for i in indices)
    for i in tree:
        if not (0 <= i < g.m):
            raise GraphParseError(f"tree edge index out of range: {i}")
    if len(tree) != g.n - 1:
        raise PreconditionError(
            f"spanning tree needs {g.n - 1} edges, got {len(tree)}"
        )
    # check the chosen edges connect all vertices (n-1 edges + connected => tree)
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for code in g.out_codes(v):
            if code % g.m in tree:
                w = g.terminal_of_code(code)
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    if not all(seen):
        raise PreconditionError("edge set does not span the graph")
    return _finish_tree(g, tree)


def _finish_tree(g: MultiGraph, tree: set[int]) -> SpanningTree:
    if len(tree) != g.n - 1:
        raise PreconditionError("spanning tree construction failed")
    cotree = tuple(i for i in range(g.m) if i not in tree)
    return SpanningTree(frozenset(tree), cotree)


def tree_parents(
    g: MultiGraph, tree: SpanningTree
) -> tuple[list[int], list[int], list[int]]:
    """Parent vertex, parent oriented-edge code, and depth, rooted at 0.

    ``parent_code[v]`` points from parent(v) to v.
    """
    parent = [-1] * g.n
    parent_code = [-1] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for code in g.out_codes(v):
            if code % g.m in tree.tree_edges:
                w = g.terminal_of_code(code)
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    parent_code[w] = code
                    depth[w] = depth[v] + 1
                    queue.append(w)
    return parent, parent_code, depth


def tree_path_codes(g: MultiGraph, tree: SpanningTree, u: int, v: int) -> list[int]:
    """Oriented-edge codes of the unique tree path from u to v."""
    parent, parent_code, depth = tree_parents(g, tree)
    up_from_u: list[int] = []
    down_to_v: list[int] = []
    while depth[u] > depth[v]:
        up_from_u.append(g.inverse_code(parent_code[u]))
        u = parent[u]
    while depth[v] > depth[u]:
        down_to_v.append(parent_code[v])
        v = parent[v]
    while u != v:
        up_from_u.append(g.inverse_code(parent_code[u]))
        down_to_v.append(parent_code[v])
        u = parent[u]
        v = parent[v]
    return up_from_u + list(reversed(down_to_v))
