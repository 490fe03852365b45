"""Counting circuits and closed walks by twist class.

The count of length-l circuits whose abelianization mod t restricts to a
prescribed chain alpha on an edge subset F is an averaged character sum:
enumerate every twist gamma supported on F, weight the trace of the l-th
power of the twisted matrix by the inverse character value at alpha, and
divide by t^|F|.  Summing over the cotree of a spanning tree counts by
homology class instead.

The twist enumeration is little-endian mixed-radix over the ordered subset,
which makes runs deterministic and lets the sum split into index ranges for
parallel evaluation.
"""

from __future__ import annotations

import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetError, PreconditionError, ResidualError
from .graphs import MultiGraph, SpanningTree, default_spanning_tree
from .homology import (
    Chain,
    chain_from_digits,
    check_edge_subset,
    digits_of,
    is_circulation,
)
from .twists import (
    DEFAULT_IMAG_TOL,
    EDGE,
    VERTEX,
    _unit_roots,
    edge_matrix,
    trace_power,
    vertex_matrix,
)

#: refuse twist sums with more than this many terms unless forced
DEFAULT_TERM_BUDGET = 2**28

#: default absolute tolerance on the rounded count
DEFAULT_COUNT_TOL = 1e-6

#: below this many terms a parallel run is not worth the process startup
_PARALLEL_THRESHOLD = 1 << 15


@dataclass
class CountReport:
    """An exact count plus the raw sum it was rounded from."""

    count: int
    raw_sum: float
    residual: float
    method: str
    t: int
    length: int
    terms: int
    denominator: int
    subset: tuple[int, ...]
    alpha: tuple[int, ...]
    exact: bool
    seconds: float = 0.0
    flips: tuple[bool, ...] | None = None
    notes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "count": self.count,
            "raw_sum": self.raw_sum,
            "residual": self.residual,
            "method": self.method,
            "t": self.t,
            "length": self.length,
            "terms": self.terms,
            "denominator": self.denominator,
            "subset": list(self.subset),
            "alpha": list(self.alpha),
            "exact": self.exact,
            "seconds": self.seconds,
        }
        if self.flips is not None:
            out["orientation"] = "".join("-" if f else "+" for f in self.flips)
        out.update(self.notes)
        return out


def _range_sum(
    g: MultiGraph,
    subset: tuple[int, ...],
    alpha_digits: tuple[int, ...],
    length: int,
    t: int,
    method: str,
    exact: bool,
    flips: tuple[bool, ...],
    imag_tol: float,
    start: int,
    stop: int,
):
    """Sum of weighted traces over one contiguous twist index range."""
    build = vertex_matrix if method == VERTEX else edge_matrix
    width = len(subset)
    roots = None if exact else _unit_roots(t)
    total: int | float | complex = 0
    for k in range(start, stop):
        digits = digits_of(k, t, width)
        coeffs = tuple(
            (t - d) % t if flip else d for d, flip in zip(digits, flips)
        )
        gamma = chain_from_digits(g.m, t, subset, coeffs)
        tr = trace_power(build(g, gamma, exact=exact), length, imag_tol)
        dot = sum(d * a for d, a in zip(digits, alpha_digits)) % t
        if exact:
            total += tr if dot % 2 == 0 else -tr
        else:
            total += roots[(t - dot) % t] * tr
    return total


def _range_sum_worker(payload):
    (n, edges, subset, alpha_digits, length, t, method, exact, flips,
     imag_tol, start, stop) = payload
    g = MultiGraph(n, edges)
    return _range_sum(
        g, subset, alpha_digits, length, t, method, exact, flips,
        imag_tol, start, stop,
    )


def resolve_jobs(jobs: int | None, terms: int) -> int:
    """Worker count: explicit value, or cores for large sums, else serial."""
    if jobs is None or jobs == 0:
        if terms < _PARALLEL_THRESHOLD:
            return 1
        return min(os.cpu_count() or 1, 8)
    if jobs < 1:
        raise PreconditionError(f"invalid job count: {jobs}")
    return jobs


def twist_trace_sum(
    g: MultiGraph,
    subset: tuple[int, ...],
    alpha_digits: tuple[int, ...],
    length: int,
    t: int,
    method: str,
    exact: bool | None = None,
    flips: tuple[bool, ...] | None = None,
    imag_tol: float = DEFAULT_IMAG_TOL,
    jobs: int | None = 1,
    term_budget: int = DEFAULT_TERM_BUDGET,
    force: bool = False,
):
    """The raw weighted trace sum over all twists on ``subset``.

    Returns (total, terms, exact_used).  ``alpha_digits`` live in the same
    mixed-radix digit space as the enumeration; ``flips`` negates the chain
    coefficient of flipped subset edges before the matrices are built, which
    is how orientation-relative twists are expressed in reference
    coordinates.
    """
    if method not in (VERTEX, EDGE):
        raise PreconditionError(f"unknown method: {method}")
    if t < 2:
        raise PreconditionError(f"modulus must be >= 2, got {t}")
    if length < 1:
        raise PreconditionError("length must be >= 1")
    if exact is None:
        exact = t == 2
    if flips is None:
        flips = (False,) * len(subset)
    terms = t ** len(subset)
    if terms > term_budget and not force:
        raise BudgetError(
            f"{terms} twists exceed the budget of {term_budget}; "
            "pass force=True (--force) to proceed"
        )
    jobs = resolve_jobs(jobs, terms)
    if jobs == 1 or terms < 4 * jobs:
        total = _range_sum(
            g, subset, alpha_digits, length, t, method, exact, flips,
            imag_tol, 0, terms,
        )
        return total, terms, exact

    chunk = (terms + 4 * jobs - 1) // (4 * jobs)
    payloads = [
        (g.n, g.edges, subset, alpha_digits, length, t, method, exact,
         flips, imag_tol, lo, min(lo + chunk, terms))
        for lo in range(0, terms, chunk)
    ]
    total = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_range_sum_worker, payloads):
            total += part
    return total, terms, exact


def round_count(total, denominator: int, tolerance: float = DEFAULT_COUNT_TOL):
    """Round a raw sum to the integer count, enforcing the residual bound.

    Exact integer sums must divide evenly.  Floating sums must land within
    ``tolerance`` of a nonnegative integer; a slightly negative value rounds
    to zero with a warning.
    """
    if isinstance(total, int):
        count, rem = divmod(total, denominator)
        if rem != 0 or count < 0:
            raise ResidualError(
                f"exact sum {total} is not a nonnegative multiple of "
                f"{denominator}"
            )
        return count, 0.0
    value = complex(total) / denominator
    count = round(value.real)
    residual = abs(value - count)
    if count < 0:
        if abs(value) <= tolerance:
            warnings.warn("count rounded up to 0 from a small negative sum")
            return 0, abs(value)
        raise ResidualError(f"negative count {value!r} from trace sum")
    if residual > tolerance:
        raise ResidualError(
            f"residual {residual:g} exceeds tolerance {tolerance:g}"
        )
    return count, residual


def _raw_value(total) -> float | int:
    if isinstance(total, complex):
        return total.real
    return total


def count_circuits_in_class(
    g: MultiGraph,
    subset: Sequence[int],
    alpha: Chain,
    length: int,
    t: int,
    method: str = EDGE,
    *,
    exact: bool | None = None,
    tolerance: float = DEFAULT_COUNT_TOL,
    imag_tol: float = DEFAULT_IMAG_TOL,
    term_budget: int = DEFAULT_TERM_BUDGET,
    force: bool = False,
    jobs: int | None = 1,
) -> CountReport:
    """Circuits (or closed walks, method="vertex") of one twist class.

    Counts length-l closed sequences whose abelianization mod t agrees with
    ``alpha`` on ``subset``; ``alpha`` must be supported there.
    """
    started = time.perf_counter()
    subset = check_edge_subset(g, subset)
    if alpha.t != t:
        raise PreconditionError("alpha modulus does not match t")
    if len(alpha) != g.m:
        raise PreconditionError("alpha length does not match edge count")
    outside = set(alpha.support()) - set(subset)
    if outside:
        raise PreconditionError(
            f"alpha not supported on the subset (edges {sorted(outside)})"
        )
    alpha_digits = tuple(alpha.coeffs[i] for i in subset)
    total, terms, exact_used = twist_trace_sum(
        g, subset, alpha_digits, length, t, method,
        exact=exact, imag_tol=imag_tol, jobs=jobs,
        term_budget=term_budget, force=force,
    )
    denominator = t ** len(subset)
    count, residual = round_count(total, denominator, tolerance)
    return CountReport(
        count=count,
        raw_sum=_raw_value(total),
        residual=residual,
        method=method,
        t=t,
        length=length,
        terms=terms,
        denominator=denominator,
        subset=subset,
        alpha=alpha_digits,
        exact=exact_used,
        seconds=time.perf_counter() - started,
    )


def count_circuits_in_homology(
    g: MultiGraph,
    tree: SpanningTree | None,
    alpha: Chain,
    length: int,
    t: int,
    method: str = EDGE,
    **kwargs,
) -> CountReport:
    """Circuits (or closed walks) in the homology class of a circulation.

    Restricting the class to the cotree of any spanning tree loses nothing,
    so this delegates to the subset count with F = cotree and t^genus terms.
    """
    if not is_circulation(g, alpha):
        raise PreconditionError("alpha not a circulation")
    if alpha.t != t:
        raise PreconditionError("alpha modulus does not match t")
    if tree is None:
        tree = default_spanning_tree(g)
    report = count_circuits_in_class(
        g, tree.cotree_edges, alpha.restrict(tree.cotree_edges),
        length, t, method, **kwargs,
    )
    report.notes["tree"] = sorted(tree.tree_edges)
    return report
