import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wallqueens.reduce.embed import NonPlanar, embed_graph, planar_embed, split_high_degree
from wallqueens.reduce.formula import Formula, incidence_graph
from wallqueens.reduce.ortho import (
    LayoutError, OrthoLayout, biconnect, double_coords, ortho_layout, st_numbering, validate_layout,
)

from test_formula import WORKED_INSTANCE


def test_worked_instance_embeds():
    e = planar_embed(incidence_graph(WORKED_INSTANCE))
    assert e.euler_ok()


def test_k33_incidence_graph_is_rejected():
    f = Formula(3, ((1, 2, 3), (1, 2, 3), (1, 2, 3)))
    with pytest.raises(NonPlanar):
        planar_embed(incidence_graph(f))


def test_single_edge_embeds():
    e = planar_embed(incidence_graph(Formula(1, ((1,),))))
    assert e.graph.number_of_edges() == 1 and e.euler_ok()


def test_split_degree_five_into_three_chained_subvariables():
    e = split_high_degree(planar_embed(incidence_graph(WORKED_INSTANCE)))
    subs = sorted(v for v in e.graph if v[0] == "v" and v[1] == 1)
    assert subs == [("v", 1, 0), ("v", 1, 1), ("v", 1, 2)]
    assert e.graph.has_edge(subs[0], subs[1]) and e.graph.has_edge(subs[1], subs[2])
    assert max(d for _, d in e.graph.degree) <= 3
    # every clause still sees variable 1 exactly once
    for j in range(5):
        assert sum(1 for s in subs if e.graph.has_edge(s, ("c", j))) == 1


def test_split_degree_four_gives_two_subvariables():
    f = Formula(1, ((1,), (1,), (-1,), (1,)))
    e = split_high_degree(planar_embed(incidence_graph(f)))
    assert sorted(v for v in e.graph if v[0] == "v") == [("v", 1, 0), ("v", 1, 1)]
    n = 5
    assert e.graph.number_of_nodes() <= n * n


def test_split_leaves_degree_three_alone():
    f = Formula(1, ((1,), (1,), (-1,)))
    before = planar_embed(incidence_graph(f))
    after = split_high_degree(before)
    assert sorted(after.graph.nodes) == sorted(before.graph.nodes)


def _random_planar_cubic(rng, n):
    g = nx.Graph()
    g.add_node(0)
    for v in range(1, n):
        g.add_edge(v, rng.choice([u for u in g if g.degree(u) < 3]))
    for _ in range(2 * n):
        u, v = rng.sample(range(n), 2)
        if g.degree(u) < 3 and g.degree(v) < 3 and not g.has_edge(u, v):
            g.add_edge(u, v)
            if not nx.check_planarity(g)[0]:
                g.remove_edge(u, v)
    return g


@given(st.integers(0, 10_000), st.integers(2, 16))
def test_layout_of_random_planar_graphs_is_valid(seed, n):
    g = _random_planar_cubic(random.Random(seed), n)
    lay = ortho_layout(embed_graph(g))
    validate_layout(lay, g)
    assert max(len(lay.bends(k)) for k in lay.paths) <= 2
    assert lay.width <= 2 * n + 2 and lay.height <= n  # grid extents stay polynomial


def test_single_edge_layout():
    g = nx.Graph([(0, 1)])
    lay = ortho_layout(embed_graph(g))
    (a, b) = lay.points[0], lay.points[1]
    assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def test_triangle_needs_a_bend():
    g = nx.cycle_graph(3)
    lay = ortho_layout(embed_graph(g))
    assert sum(len(lay.bends(k)) for k in lay.paths) >= 1


def test_layout_is_deterministic():
    g = _random_planar_cubic(random.Random(5), 12)
    a, b = ortho_layout(embed_graph(g)), ortho_layout(embed_graph(g))
    assert a == b


def test_validator_catches_crossings():
    g = nx.Graph([(0, 1), (2, 3)])
    bad = OrthoLayout({0: (0, 1), 1: (2, 1), 2: (1, 0), 3: (1, 2)},
                      {(0, 1): [(0, 1), (1, 1), (2, 1)], (2, 3): [(1, 0), (1, 1), (1, 2)]}, 3, 3)
    with pytest.raises(LayoutError):
        validate_layout(bad, g)


def test_degree_four_is_refused():
    with pytest.raises(ValueError):
        ortho_layout(embed_graph(nx.star_graph(4)))


def test_double_coords_examples():
    lay = OrthoLayout({"a": (3, 4), "b": (3, 5)}, {("a", "b"): [(3, 4), (3, 5)]}, 4, 6)
    d = double_coords(lay)
    assert d.points["a"] == (6, 8)
    assert d.paths[("a", "b")] == [(6, 8), (6, 9), (6, 10)]
    assert (d.width, d.height) == (8, 12)


@given(st.integers(0, 10_000), st.integers(3, 14))
def test_doubling_spaces_bends_and_vertices(seed, n):
    g = _random_planar_cubic(random.Random(seed), n)
    d = double_coords(ortho_layout(embed_graph(g)))
    for k, pts in d.paths.items():
        marks = [0] + [i for i in range(1, len(pts) - 1) if pts[i] in d.bends(k)] + [len(pts) - 1]
        assert all(b - a >= 2 for a, b in zip(marks, marks[1:]))


@given(st.integers(0, 10_000), st.integers(3, 14))
def test_st_numbering_property(seed, n):
    g = _random_planar_cubic(random.Random(seed), n)
    h, _, _ = biconnect(g)
    if h.number_of_nodes() < 3 or not nx.is_biconnected(h):
        return
    s, t = min(tuple(sorted(e)) for e in h.edges)
    num = st_numbering(h, s, t)
    assert num[s] == 1 and num[t] == h.number_of_nodes()
    for v in h:
        if v not in (s, t):
            ns = [num[w] for w in h[v]]
            assert min(ns) < num[v] < max(ns)
