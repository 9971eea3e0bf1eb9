import random

import pytest

from ldfeat.graph import LabeledGraph
from ldfeat.measures import betweenness, clustering_coefficient, degree_centrality

from oracles import brute_betweenness, random_graph

MEASURES = [betweenness, degree_centrality, clustering_coefficient]


def undirected(n, pairs):
    edges = []
    for a, b in pairs:
        edges += [(a, b, 1.0), (b, a, 1.0)]
    return LabeledGraph([str(i) for i in range(n)], edges)


def star():
    return undirected(4, [(0, 1), (0, 2), (0, 3)])


def test_star_betweenness():
    assert betweenness(star(), "undirected") == [3.0, 0.0, 0.0, 0.0]


def test_four_cycle_betweenness():
    g = undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert betweenness(g, "undirected") == pytest.approx([0.5] * 4, abs=1e-12)


def test_complete_graph_has_zero_betweenness():
    g = undirected(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    assert betweenness(g, "undirected") == [0.0] * 5
    assert betweenness(g, "directed") == [0.0] * 5
    assert degree_centrality(g) == [1.0] * 5


def test_degree_examples():
    g = undirected(5, [(0, 1), (0, 2)])
    assert degree_centrality(g)[0] == 0.5
    assert degree_centrality(g)[4] == 0.0
    assert degree_centrality(LabeledGraph(["a"], [])) == [0.0]


def test_clustering_examples():
    tri = undirected(3, [(0, 1), (1, 2), (0, 2)])
    assert clustering_coefficient(tri) == [1.0, 1.0, 1.0]
    assert clustering_coefficient(star())[0] == 0.0
    # v -> a, v -> b, a -> b only
    g = LabeledGraph(["v", "a", "b"], [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
    assert clustering_coefficient(g, "directed")[0] == 0.5


def test_tiny_graphs_are_zero():
    for n in (0, 1, 2):
        g = undirected(n, [(0, 1)] if n == 2 else [])
        assert betweenness(g) == [0.0] * n


@pytest.mark.parametrize("seed", range(60))
@pytest.mark.parametrize("direction", ["directed", "undirected"])
def test_betweenness_matches_path_enumeration(seed, direction):
    rnd = random.Random(seed)
    g = random_graph(rnd.randint(1, 9), 0.3, seed)
    expect = brute_betweenness(g, direction == "directed")
    got = betweenness(g, direction)
    assert got == pytest.approx(expect, abs=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_ranges_weights_and_relabeling(seed):
    rnd = random.Random(seed)
    n = rnd.randint(2, 9)
    g = random_graph(n, 0.35, seed)
    for d in ("directed", "undirected"):
        cc = clustering_coefficient(g, d)
        assert all(0.0 <= c <= 1.0 for c in cc)
    assert all(0.0 <= x <= 1.0 for x in degree_centrality(g, "undirected"))

    # weights never matter
    heavier = LabeledGraph(g.ids, [(i, j, w * 7 + 1) for i, j, w in g.edges()])
    # permuting node ids permutes the outputs
    perm = list(range(n))
    rnd.shuffle(perm)
    permuted = LabeledGraph([g.ids[perm.index(k)] for k in range(n)],
                            [(perm[i], perm[j], w) for i, j, w in g.edges()])
    for m in (betweenness, degree_centrality, clustering_coefficient):
        for d in ("directed", "undirected"):
            base = m(g, d)
            assert m(heavier, d) == base
            moved = m(permuted, d)
            assert [moved[perm[v]] for v in range(n)] == pytest.approx(base, abs=1e-12)
