"""Brute-force enumeration of circuits, closed walks, and Eulerian circuits.

Everything here is exact backtracking over oriented-edge sequences, used as
ground truth for the trace formulas.  Counts are either correct or the
search aborts on its budget; there is no approximation.

Circuits carry their starting position: every rotation of a closed sequence
is counted separately.  Division by the edge count to pass from Eulerian
circuits to Eulerian cycles happens only in :func:`count_eulerian_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, PreconditionError
from .graphs import MultiGraph, Walk
from .homology import Chain, check_edge_subset


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits for the backtracking searches."""

    max_length: int = 12
    max_branching: int = 64
    max_nodes: int = 100_000_000


DEFAULT_BUDGET = OracleBudget()


class _Search:
    """Shared DFS state: node accounting and optional walk collection."""

    def __init__(self, g: MultiGraph, budget: OracleBudget, collect: bool):
        if 2 * g.m > budget.max_branching:
            raise BudgetError(
                f"oriented-edge count {2 * g.m} exceeds branching budget"
            )
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.count = 0
        self.walks: list[Walk] | None = [] if collect else None

    def visit(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetError(f"search exceeded {self.budget.max_nodes} nodes")

    def hit(self, path: list[int]) -> None:
        self.count += 1
        if self.walks is not None:
            g = self.g
            self.walks.append(Walk(tuple(g.oriented(c) for c in path)))


def _check_length(length: int, budget: OracleBudget) -> None:
    if length < 1:
        raise PreconditionError("length must be >= 1")
    if length > budget.max_length:
        raise BudgetError(
            f"length {length} exceeds budget max_length={budget.max_length}"
        )


def enumerate_circuits(
    g: MultiGraph,
    length: int,
    budget: OracleBudget = DEFAULT_BUDGET,
    collect: bool = False,
):
    """Count closed length-l sequences with no backtrack and no tail.

    Returns the count, or (count, walks) when ``collect`` is set.
    """
    _check_length(length, budget)
    search = _Search(g, budget, collect)
    path: list[int] = []

    def extend(code: int, depth: int) -> None:
        search.visit()
        path.append(code)
        if depth == length:
            first = path[0]
            if (
                g.terminal_of_code(code) == g.initial_of_code(first)
                and code != g.inverse_code(first)
            ):
                search.hit(path)
        else:
            banned = g.inverse_code(code)
            for nxt in g.out_codes(g.terminal_of_code(code)):
                if nxt != banned:
                    extend(nxt, depth + 1)
        path.pop()

    for start in range(2 * g.m):
        extend(start, 1)
    if collect:
        return search.count, search.walks
    return search.count


def enumerate_closed_walks(
    g: MultiGraph,
    length: int,
    budget: OracleBudget = DEFAULT_BUDGET,
    collect: bool = False,
):
    """Count closed length-l sequences; backtracks and tails allowed."""
    _check_length(length, budget)
    search = _Search(g, budget, collect)
    path: list[int] = []

    def extend(code: int, depth: int) -> None:
        search.visit()
        path.append(code)
        if depth == length:
            if g.terminal_of_code(code) == g.initial_of_code(path[0]):
                search.hit(path)
        else:
            for nxt in g.out_codes(g.terminal_of_code(code)):
                extend(nxt, depth + 1)
        path.pop()

    for start in range(2 * g.m):
        extend(start, 1)
    if collect:
        return search.count, search.walks
    return search.count


def census_oracle(
    g: MultiGraph,
    subset,
    alpha: Chain,
    length: int,
    t: int,
    kind: str = "circuits",
    budget: OracleBudget = DEFAULT_BUDGET,
) -> int:
    """Count circuits or closed walks in one twist class.

    A closed sequence is counted when its abelianization mod t, restricted
    to ``subset``, matches ``alpha`` there.
    """
    subset = check_edge_subset(g, subset)
    if alpha.t != t:
        raise PreconditionError("alpha modulus does not match t")
    target = tuple(alpha.coeffs[i] % t for i in subset)
    counts = class_counts(g, subset, length, t, kind, budget)
    return counts.get(target, 0)


def class_counts(
    g: MultiGraph,
    subset,
    length: int,
    t: int,
    kind: str = "circuits",
    budget: OracleBudget = DEFAULT_BUDGET,
) -> dict[tuple[int, ...], int]:
    """Class sizes for every twist class at once, keyed by restricted digits."""
    subset = check_edge_subset(g, subset)
    if kind not in ("circuits", "walks"):
        raise PreconditionError(f"unknown census kind: {kind}")
    _check_length(length, budget)
    circuits_only = kind == "circuits"
    search = _Search(g, budget, collect=False)
    coeffs = [0] * g.m
    counts: dict[tuple[int, ...], int] = {}

    def extend(code: int, first: int, depth: int) -> None:
        search.visit()
        edge = code % g.m
        delta = 1 if code < g.m else -1
        coeffs[edge] += delta
        if depth == length:
            closed = g.terminal_of_code(code) == g.initial_of_code(first)
            ok = closed and (
                not circuits_only or code != g.inverse_code(first)
            )
            if ok:
                key = tuple(coeffs[i] % t for i in subset)
                counts[key] = counts.get(key, 0) + 1
        else:
            banned = g.inverse_code(code) if circuits_only else -1
            for nxt in g.out_codes(g.terminal_of_code(code)):
                if nxt != banned:
                    extend(nxt, first, depth + 1)
        coeffs[edge] -= delta

    for start in range(2 * g.m):
        extend(start, start, 1)
    return counts


def count_eulerian_oracle(
    g: MultiGraph,
    budget: OracleBudget = DEFAULT_BUDGET,
    collect: bool = False,
):
    """Eulerian cycles by backtracking over unused edges.

    Enumerates all Eulerian circuits (every starting position) and divides
    by the edge count, since each cycle has exactly m circuit
    representatives.
    """
    if g.m > budget.max_length:
        raise BudgetError(
            f"edge count {g.m} exceeds budget max_length={budget.max_length}"
        )
    search = _Search(g, budget, collect)
    used = [False] * g.m
    path: list[int] = []

    def extend(code: int, depth: int) -> None:
        search.visit()
        used[code % g.m] = True
        path.append(code)
        if depth == g.m:
            if g.terminal_of_code(code) == g.initial_of_code(path[0]):
                search.hit(path)
        else:
            for nxt in g.out_codes(g.terminal_of_code(code)):
                if not used[nxt % g.m]:
                    extend(nxt, depth + 1)
        path.pop()
        used[code % g.m] = False

    for start in range(2 * g.m):
        extend(start, 1)
    total = search.count
    if total % g.m != 0:
        raise AssertionError(
            f"Eulerian circuit total {total} not divisible by m={g.m}"
        )
    if collect:
        return total // g.m, search.walks
    return total // g.m
