"""Shared fixtures: the two labeled example graphs and random multigraphs."""

import pathlib
import random

import pytest

import eulercount as ec

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def g2():
    return ec.load_graph(str(FIXTURES / "g2.graph"))[0]


@pytest.fixture(scope="session")
def g1():
    return ec.load_graph(str(FIXTURES / "g1.graph"))[0]


@pytest.fixture(scope="session")
def g2_tree(g2):
    return ec.default_spanning_tree(g2)


@pytest.fixture(scope="session")
def g1_tree(g1):
    return ec.default_spanning_tree(g1)


@pytest.fixture(scope="session")
def g2_generators(g2):
    text = (FIXTURES / "g2_generators.json").read_text()
    return ec.reductions.load_generators(g2, text)


def random_multigraph(rng: random.Random, max_n: int = 5, max_m: int = 7):
    """A connected random multigraph with loops and parallel edges."""
    n = rng.randint(1, max_n)
    m = rng.randint(max(1, n - 1), max_m)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    while len(edges) < m:
        edges.append((rng.randrange(n), rng.randrange(n)))
    rng.shuffle(edges)
    return ec.MultiGraph(n, edges)


def random_eulerian_multigraph(rng: random.Random, max_n: int = 5, max_m: int = 7):
    """Random connected graph patched to all-even degrees."""
    g = random_multigraph(rng, max_n, max_m)
    odd = [v for v in range(g.n) if g.degree(v) % 2 == 1]
    rng.shuffle(odd)
    edges = list(g.edges)
    for u, v in zip(odd[::2], odd[1::2]):
        edges.append((u, v))
    return ec.MultiGraph(g.n, edges)


@pytest.fixture(scope="session")
def random_graphs():
    rng = random.Random(20260810)
    return [random_multigraph(rng) for _ in range(60)]


@pytest.fixture(scope="session")
def random_eulerian_graphs():
    rng = random.Random(90210)
    return [random_eulerian_multigraph(rng) for _ in range(30)]
