import random

import pytest
from hypothesis import given, settings, strategies as st

from ldfeat.graph import GraphError, LabeledGraph
from ldfeat.labelfeat import cc_label, lift, lift_generic, ncn, ncs
from ldfeat.measures import betweenness, clustering_coefficient, degree_centrality

from oracles import naive_induced, random_graph

MEASURES = [betweenness, degree_centrality, clustering_coefficient]
DIRS = ["directed", "undirected"]


def test_fig2_ncn_and_ncs(star_graph):
    assert ncn(star_graph, "red", 0) == 0.5
    assert ncs(star_graph, "red", 0) == 0.5
    assert ncs(star_graph, "white", 0) == 0.5


def test_ncn_counts():
    # v0 -> white a, white b, red c; d unlabeled
    g = LabeledGraph(list("vabcd"), [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)],
                     labels={1: "white", 2: "white", 3: "red"}, label_set=("red", "white"))
    assert ncn(g, "red", 0) == pytest.approx(1 / 3)
    assert ncn(g, "white", 0) == pytest.approx(2 / 3)
    only = g.with_labels({1: "red", 2: "red", 3: "red"})
    assert ncn(only, "red", 0) == 1.0


def test_ncs_single_labeled_neighbor_and_missing():
    g = LabeledGraph(list("vab"), [(0, 1, 0.3), (0, 2, 0.9)], labels={1: "x"}, label_set=("x", "y"))
    assert ncs(g, "x", 0) == 1.0
    assert ncs(g, "y", 0) == 0.0
    assert ncn(g, "x", 1) is None
    assert ncs(g, "x", 1, missing="zero") == 0.0
    zero = LabeledGraph(list("va"), [(0, 1, 0.0)], labels={1: "x"}, label_set=("x",))
    assert ncs(zero, "x", 0) is None
    with pytest.raises(GraphError):
        ncn(g, "nope", 0)


def test_ncs_undirected_prefers_out_edge():
    g = LabeledGraph(list("vab"), [(0, 1, 3.0), (1, 0, 100.0), (2, 0, 1.0)],
                     labels={1: "x", 2: "y"}, label_set=("x", "y"))
    assert ncs(g, "x", 0, "undirected") == 0.75
    assert ncs(g, "x", 0, "directed") == 1.0


def test_uniform_weights_make_ncs_equal_ncn():
    g = random_graph(10, 0.4, 3, weights=False, label_prob=0.7)
    for v in g.nodes:
        for lab in g.label_set:
            for d in DIRS:
                count = ncn(g, lab, v, d)
                if count is None:
                    assert ncs(g, lab, v, d) is None
                else:
                    assert ncs(g, lab, v, d) == pytest.approx(count)


def test_lift_on_fully_labeled_graph_equals_measure():
    g = random_graph(8, 0.4, 9, labels=("a",))
    for m in MEASURES:
        for d in DIRS:
            assert list(lift(m, g, "a", d).values) == pytest.approx(m(g, d))


def test_lift_degree_augmented_example():
    tri = [(0, 1), (1, 2), (0, 2)]
    edges = [(a, b, 1.0) for a, b in tri] + [(b, a, 1.0) for a, b in tri]
    edges += [(3, 0, 1.0), (3, 1, 1.0), (3, 4, 1.0), (4, 5, 1.0)]
    g = LabeledGraph(list("abcfxy"), edges, labels={0: "0", 1: "0", 2: "0", 4: "1", 5: "1"},
                     label_set=("0", "1"))
    vec = lift(degree_centrality, g, "0", "undirected", "augmented")
    assert vec.values[3] == pytest.approx(2 / 3)
    assert lift(degree_centrality, g, "0", "undirected", "strict").values[3] is None
    # two mutually tied class-0 neighbours
    assert cc_label(g, "0", 3, "undirected") == 1.0
    assert cc_label(g, "1", 3, "undirected") == 0.0


def test_cc_label_on_triangle():
    edges = [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]
    g = LabeledGraph(list("abc"), edges, labels={0: "l", 1: "l", 2: "l"}, label_set=("l",))
    assert [cc_label(g, "l", v) for v in g.nodes] == [1.0, 1.0, 1.0]


@pytest.mark.parametrize("seed", range(100))
def test_cc_label_is_lift_alias(seed):
    rnd = random.Random(seed)
    g = random_graph(rnd.randint(2, 10), 0.35, seed, label_prob=0.8)
    lab = rnd.choice(g.label_set)
    d = rnd.choice(DIRS)
    mode = rnd.choice(["augmented", "strict"])
    vec = lift(clustering_coefficient, g, lab, d, mode)
    for v in g.nodes:
        assert cc_label(g, lab, v, d, mode) == vec.values[v]


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("measure", MEASURES, ids=lambda m: m.__name__)
def test_fast_lift_matches_generic(seed, measure):
    rnd = random.Random(seed)
    g = random_graph(rnd.randint(1, 11), rnd.choice([0.2, 0.35, 0.5]), seed, label_prob=0.75)
    for lab in g.label_set:
        for d in DIRS:
            for mode in ("augmented", "strict"):
                fast = lift(measure, g, lab, d, mode).values
                slow = lift_generic(measure, g, lab, d, mode).values
                for a, b in zip(fast, slow):
                    assert (a is None and b is None) or a == pytest.approx(b, abs=1e-9)


def test_custom_measure_goes_through_generic_path():
    def out_count(graph, direction):
        return [float(len(graph.out_edges(v))) for v in graph.nodes]

    g = random_graph(7, 0.5, 2)
    vec = lift(out_count, g, "1", "directed")
    assert vec.measure == "out_count"
    for v in g.nodes:
        members = {u for u in g.nodes if g.labels.get(u) == "1"} | {v}
        assert vec.values[v] == sum(1 for u in g.out_edges(v) if u in members)


@pytest.mark.parametrize("seed", range(30))
def test_strict_lift_matches_naive_subgraph(seed):
    rnd = random.Random(seed)
    g = random_graph(rnd.randint(2, 12), 0.35, seed)
    for lab in g.label_set:
        sub, members = naive_induced(g, [v for v in g.nodes if g.labels[v] == lab])
        for m in MEASURES:
            for d in DIRS:
                vec = lift(m, g, lab, d, "strict").values
                ref = m(sub, d)
                for k, v in enumerate(members):
                    assert vec[v] == ref[k]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(DIRS))
def test_partition_of_unity_and_ranges(seed, d):
    g = random_graph(9, 0.35, seed, label_prob=0.7)
    for v in g.nodes:
        a = [ncn(g, lab, v, d) for lab in g.label_set]
        b = [ncs(g, lab, v, d) for lab in g.label_set]
        if g.labeled_neighbors(v, d):
            assert sum(a) == pytest.approx(1.0, abs=1e-9)
            assert all(0.0 <= x <= 1.0 for x in a)
        if b[0] is not None:
            assert sum(b) == pytest.approx(1.0, abs=1e-9)
            assert all(0.0 <= x <= 1.0 for x in b)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.01, 100.0))
def test_ncs_scale_invariance(seed, c):
    g = random_graph(8, 0.4, seed)
    scaled = LabeledGraph(g.ids, [(i, j, w * c) for i, j, w in g.edges()], labels=g.labels, label_set=g.label_set)
    for v in g.nodes:
        for lab in g.label_set:
            a, b = ncs(g, lab, v), ncs(scaled, lab, v)
            assert (a is None and b is None) or a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_label_swap_symmetry(seed):
    g = random_graph(9, 0.4, seed, label_prob=0.8)
    swapped = g.with_labels({v: "1" if lab == "0" else "0" for v, lab in g.labels.items()})
    for v in g.nodes:
        assert ncn(g, "0", v) == ncn(swapped, "1", v)
        assert ncs(g, "1", v) == ncs(swapped, "0", v)
    for m in MEASURES:
        assert lift(m, g, "0").values == lift(m, swapped, "1").values
