"""Eulerian-cycle counts: trace formulas, BEST theorem, orientation sweep.

An Eulerian cycle is a circuit through every edge exactly once, taken up to
rotation of its starting point.  For an Eulerian graph the count equals a
signed average of trace powers over the mod-2 twists supported on any
cotree; for an Eulerian digraph the analogous average runs over mod-t twists
(t >= 3) with root-of-unity weights.  Both are cross-checkable against the
BEST theorem, which multiplies the arborescence count (a reduced Laplacian
determinant) by factorials of out-degrees, summed over all Eulerian
orientations.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .census import (
    DEFAULT_COUNT_TOL,
    DEFAULT_TERM_BUDGET,
    CountReport,
    round_count,
    twist_trace_sum,
    _raw_value,
)
from .errors import BudgetError, PreconditionError, ResidualError
from .graphs import MultiGraph, SpanningTree, default_spanning_tree, random_spanning_tree
from .twists import DEFAULT_IMAG_TOL, EDGE


@dataclass(frozen=True)
class Orientation:
    """Per-edge direction choice: True reverses the reference direction."""

    flips: tuple[bool, ...]

    @classmethod
    def reference(cls, m: int) -> "Orientation":
        return cls((False,) * m)

    @classmethod
    def from_string(cls, text: str) -> "Orientation":
        if any(ch not in "+-" for ch in text):
            raise PreconditionError(
                f"orientation string must use only '+'/'-': {text!r}"
            )
        return cls(tuple(ch == "-" for ch in text))

    def to_string(self) -> str:
        return "".join("-" if f else "+" for f in self.flips)

    def arc(self, g: MultiGraph, edge_index: int) -> tuple[int, int]:
        """(tail, head) of the edge under this orientation."""
        u, v = g.edges[edge_index]
        return (v, u) if self.flips[edge_index] else (u, v)


def _check_orientation(g: MultiGraph, orient: Orientation) -> None:
    if len(orient.flips) != g.m:
        raise PreconditionError("orientation length does not match edge count")


def out_degrees(g: MultiGraph, orient: Orientation) -> list[int]:
    _check_orientation(g, orient)
    out = [0] * g.n
    for i in range(g.m):
        out[orient.arc(g, i)[0]] += 1
    return out


def is_eulerian_orientation(g: MultiGraph, orient: Orientation) -> bool:
    """True iff in-degree equals out-degree at every vertex."""
    _check_orientation(g, orient)
    balance = [0] * g.n
    for i in range(g.m):
        tail, head = orient.arc(g, i)
        balance[tail] += 1
        balance[head] -= 1
    return all(b == 0 for b in balance)


def count_eulerian_cycles(
    g: MultiGraph,
    tree: SpanningTree | None = None,
    method: str = EDGE,
    *,
    exact: bool | None = None,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
    term_budget: int = DEFAULT_TERM_BUDGET,
    force: bool = False,
    jobs: int | None = 1,
    check_tree: bool = False,
) -> CountReport:
    """Eulerian cycles of an undirected Eulerian graph by the trace formula.

    Averages (-1)^(digit sum) * trace(M^m) over the 2^genus mod-2 twists on
    the cotree, divided by m * 2^genus.  Any spanning tree gives the same
    value; ``check_tree`` recomputes with a second tree and insists on
    agreement.

    Non-Eulerian input is a hard error: the same sum is still defined there
    but counts a different, generally nonzero, class of circuits.  The exact
    zero answer for a non-Eulerian graph comes from the class census over
    the full edge set.
    """
    if not g.is_eulerian():
        raise PreconditionError(
            "graph not Eulerian; count the all-ones class over the full "
            "edge set instead"
        )
    started = time.perf_counter()
    if tree is None:
        tree = default_spanning_tree(g)
    subset = tree.cotree_edges
    total, terms, exact_used = twist_trace_sum(
        g, subset, (1,) * len(subset), g.m, 2, method,
        exact=exact, imag_tol=imag_tol, jobs=jobs,
        term_budget=term_budget, force=force,
    )
    denominator = g.m * 2 ** g.genus()
    count, residual = round_count(total, denominator, tolerance)
    report = CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=2,
        length=g.m,
        terms=terms,
        denominator=denominator,
        subset=subset,
        alpha=(1,) * len(subset),
        exact=exact_used,
        seconds=time.perf_counter() - started,
        notes={"tree": sorted(tree.tree_edges), "kind": "eulerian-cycles"},
    )
    if check_tree:
        other = _different_tree(g, tree)
        if other is not None:
            again = count_eulerian_cycles(
                g, other, method, exact=exact, tolerance=tolerance,
                imag_tol=imag_tol, term_budget=term_budget, force=force,
                jobs=jobs, check_tree=False,
            )
            if again.count != count:
                raise ResidualError(
                    f"tree-dependent Eulerian count: {count} vs {again.count}"
                )
    return report


def _different_tree(g: MultiGraph, tree: SpanningTree) -> SpanningTree | None:
    rng = random.Random(0x5eed)
    for _ in range(8):
        candidate = random_spanning_tree(g, rng)
        if candidate.tree_edges != tree.tree_edges:
            return candidate
    return None


def count_eulerian_cycles_directed(
    g: MultiGraph,
    orient: Orientation,
    tree: SpanningTree | None = None,
    t: int = 3,
    method: str = EDGE,
    *,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
    term_budget: int = DEFAULT_TERM_BUDGET,
    force: bool = False,
    jobs: int | None = 1,
) -> CountReport:
    """Eulerian cycles of the digraph fixed by an Eulerian orientation.

    The twists live on the cotree with coefficients read relative to the
    orientation, so flipped edges contribute negated chain coefficients; the
    weight is the inverse root of unity at the plain digit sum.  Needs
    t >= 3: mod 2 cannot tell the two traversal directions apart.
    """
    if t < 3:
        raise PreconditionError("t must be >= 3 for the directed count")
    if not is_eulerian_orientation(g, orient):
        raise PreconditionError("orientation not Eulerian")
    started = time.perf_counter()
    if tree is None:
        tree = default_spanning_tree(g)
    subset = tree.cotree_edges
    flips = tuple(orient.flips[i] for i in subset)
    total, terms, exact_used = twist_trace_sum(
        g, subset, (1,) * len(subset), g.m, t, method,
        exact=False, flips=flips, imag_tol=imag_tol, jobs=jobs,
        term_budget=term_budget, force=force,
    )
    denominator = g.m * t ** g.genus()
    count, residual = round_count(total, denominator, tolerance)
    return CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=t,
        length=g.m,
        terms=terms,
        denominator=denominator,
        subset=subset,
        alpha=(1,) * len(subset),
        exact=exact_used,
        seconds=time.perf_counter() - started,
        flips=orient.flips,
        notes={"tree": sorted(tree.tree_edges), "kind": "eulerian-cycles-directed"},
    )


@dataclass
class BestReport:
    """BEST-theorem evaluation for one Eulerian orientation."""

    orientation: Orientation
    laplacian: tuple[tuple[int, ...], ...]
    root: int
    determinant: int
    arborescences: int
    cycle_count: int

    def to_json_dict(self) -> dict:
        return {
            "orientation": self.orientation.to_string(),
            "root": self.root,
            "determinant": self.determinant,
            "arborescences": self.arborescences,
            "count": self.cycle_count,
        }


def directed_laplacian(g: MultiGraph, orient: Orientation) -> list[list[int]]:
    """Out-degree diagonal minus arc counts; loops cancel to zero."""
    lap = [[0] * g.n for _ in range(g.n)]
    for i in range(g.m):
        tail, head = orient.arc(g, i)
        lap[tail][tail] += 1
        lap[tail][head] -= 1
    return lap


def _int_determinant(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant over exact integers."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def best_count(
    g: MultiGraph, orient: Orientation, root: int | None = None
) -> BestReport:
    """Eulerian cycles of the digraph via the BEST theorem.

    Deletes the root row and column of the directed Laplacian, takes the
    exact integer determinant (the arborescence count, root-independent),
    and multiplies by (outdeg - 1)! over all vertices.
    """
    if not is_eulerian_orientation(g, orient):
        raise PreconditionError("orientation not Eulerian")
    if root is None:
        root = g.n - 1
    if not (0 <= root < g.n):
        raise PreconditionError(f"root vertex out of range: {root}")
    lap = directed_laplacian(g, orient)
    reduced = [
        [lap[i][j] for j in range(g.n) if j != root]
        for i in range(g.n)
        if i != root
    ]
    det = _int_determinant(reduced)
    if det < 0:
        raise ResidualError(f"negative arborescence count {det}")
    factor = math.prod(math.factorial(d - 1) for d in out_degrees(g, orient))
    return BestReport(
        orientation=orient,
        laplacian=tuple(tuple(row) for row in lap),
        root=root,
        determinant=det,
        arborescences=det,
        cycle_count=det * factor,
    )


def enumerate_eulerian_orientations(
    g: MultiGraph, max_edges: int = 24
) -> list[Orientation]:
    """All orientations balancing in- and out-degree, in flip-lex order.

    Depth-first over edge indices with '+' tried before '-', pruning as soon
    as a vertex imbalance exceeds its remaining unassigned endpoints.  The
    two directions of a loop both count.
    """
    if not g.is_eulerian():
        raise PreconditionError("graph not Eulerian")
    if g.m > max_edges:
        raise BudgetError(
            f"edge count {g.m} exceeds the orientation budget {max_edges}"
        )
    remaining = [g.degree(v) for v in range(g.n)]
    balance = [0] * g.n
    flips: list[bool] = []
    found: list[Orientation] = []

    def feasible(v: int) -> bool:
        return abs(balance[v]) <= remaining[v]

    def assign(i: int) -> None:
        if i == g.m:
            found.append(Orientation(tuple(flips)))
            return
        u, v = g.edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        for flip in (False, True):
            tail, head = (v, u) if flip else (u, v)
            balance[tail] += 1
            balance[head] -= 1
            if feasible(u) and feasible(v):
                flips.append(flip)
                assign(i + 1)
                flips.pop()
            balance[tail] -= 1
            balance[head] += 1
        remaining[u] += 1
        remaining[v] += 1

    assign(0)
    return found


def count_via_best(g: MultiGraph, max_edges: int = 24) -> tuple[int, list[BestReport]]:
    """Total Eulerian cycles as the BEST sum over all Eulerian orientations."""
    reports = [best_count(g, o) for o in enumerate_eulerian_orientations(g, max_edges)]
    return sum(r.cycle_count for r in reports), reports
