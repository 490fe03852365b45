"""Brute-force enumeration against closed forms and spec'd values."""

import random

import pytest

import eulercount as ec
from eulercount.errors import BudgetError
from eulercount.homology import Chain
from eulercount.oracle import (
    OracleBudget,
    census_oracle,
    class_counts,
    count_eulerian_oracle,
    enumerate_circuits,
    enumerate_closed_walks,
)
from eulercount.twists import edge_matrix, trace_power, vertex_matrix

from conftest import random_multigraph


def test_circuit_counts_golden(g2):
    assert enumerate_circuits(g2, 8) == 6800


def test_circuit_counts_triangle():
    c3 = ec.MultiGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert enumerate_circuits(c3, 3) == 6


def test_length_one_circuits_count_loops():
    rng = random.Random(3)
    for _ in range(30):
        g = random_multigraph(rng)
        loops = sum(1 for u, v in g.edges if u == v)
        assert enumerate_circuits(g, 1) == 2 * loops


def test_closed_walk_counts_golden(g1, g2):
    assert enumerate_closed_walks(g2, 8) == 66048
    assert enumerate_closed_walks(g1, 2) == 18


def test_length_two_walks_simple_graph():
    c4 = ec.MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert enumerate_closed_walks(c4, 2) == 8


def test_counts_match_traces_random():
    rng = random.Random(71)
    checked = 0
    for _ in range(25):
        g = random_multigraph(rng)
        zero = Chain.zero(g.m, 2)
        w = edge_matrix(g, zero)
        a = vertex_matrix(g, zero)
        for length in range(1, 7):
            if (2 * g.m) ** length > 400_000:
                continue
            assert enumerate_circuits(g, length) == trace_power(w, length)
            assert enumerate_closed_walks(g, length) == trace_power(a, length)
            checked += 1
    assert checked >= 100


def test_census_oracle_golden(g1, g1_tree):
    ones_t = Chain.from_support(9, 2, g1_tree.cotree_edges)
    assert census_oracle(g1, g1_tree.cotree_edges, ones_t, 9, 2, "circuits") == 6
    assert census_oracle(g1, g1_tree.cotree_edges, ones_t, 9, 2, "walks") == 3282


def test_census_oracle_unreachable_length(g2, g2_tree):
    ones_t = Chain.from_support(8, 2, g2_tree.cotree_edges)
    assert census_oracle(g2, g2_tree.cotree_edges, ones_t, 1, 2, "circuits") == 0


def test_class_counts_partition_totals(g2):
    counts = class_counts(g2, (2, 4), 4, 2, "circuits")
    assert sum(counts.values()) == enumerate_circuits(g2, 4)


def test_eulerian_oracle_golden(g1, g2):
    assert count_eulerian_oracle(g2) == 88
    assert count_eulerian_oracle(g1) == 0
    c4 = ec.MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert count_eulerian_oracle(c4) == 2
    loop = ec.MultiGraph(1, [(0, 0)])
    assert count_eulerian_oracle(loop) == 2


def test_eulerian_oracle_times_m_equals_census(g2):
    ones = Chain.ones(8, 2)
    total = census_oracle(g2, tuple(range(8)), ones, 8, 2, "circuits")
    assert total == 88 * 8


def test_streamed_circuits_are_circuits(g2):
    count, walks = enumerate_circuits(g2, 3, collect=True)
    assert count == len(walks) > 0
    for walk in walks:
        assert walk.is_circuit(g2)


def test_streamed_eulerian_circuits_cover_all_edges(g2):
    count, walks = count_eulerian_oracle(g2, collect=True)
    assert count == 88
    assert len(walks) == 88 * 8
    for walk in walks[:20]:
        assert sorted(step.edge_index for step in walk.steps) == list(range(8))
        assert walk.is_circuit(g2)


def test_budget_length(g2):
    with pytest.raises(BudgetError):
        enumerate_circuits(g2, 13)
    with pytest.raises(BudgetError):
        enumerate_circuits(g2, 20, OracleBudget(max_length=19, max_nodes=10))


def test_budget_nodes(g2):
    with pytest.raises(BudgetError):
        enumerate_closed_walks(g2, 8, OracleBudget(max_nodes=100))


def test_budget_branching(g2):
    with pytest.raises(BudgetError):
        enumerate_circuits(g2, 2, OracleBudget(max_branching=4))
