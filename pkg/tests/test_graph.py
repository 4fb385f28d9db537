import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from spectre.graph import (
    ColoredGraph,
    GraphError,
    VertexPermutation,
    betti1,
    connected_components,
    parse_graph,
    permute,
    random_colored_graph,
    serialize_graph,
)

from conftest import colored_graphs


def test_build_canonicalizes_edges():
    g = ColoredGraph.build(3, [(2, 0), (1, 0)], ["a", "b", "a"])
    assert g.edges == ((0, 1), (0, 2))
    assert g.color_set == ("a", "b")
    assert g.degrees == (2, 1, 1)


@pytest.mark.parametrize("edges, msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 5)], "out of range"),
])
def test_build_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        ColoredGraph.build(3, edges, ["a"] * 3)


def test_direct_constructor_checks_order():
    with pytest.raises(GraphError):
        ColoredGraph(3, ((1, 2), (0, 1)), ("a",) * 3, ("a",))
    with pytest.raises(GraphError):
        ColoredGraph(2, ((1, 0),), ("a", "a"), ("a",))
    with pytest.raises(GraphError):
        ColoredGraph(2, (), ("a", "z"), ("a",))


def test_json_round_trip():
    doc = {"color_set": ["red", "blue"],
           "vertices": [{"id": 1, "color": "blue"}, {"id": 0, "color": "red"}],
           "edges": [[1, 0]]}
    g = parse_graph(json.dumps(doc))
    assert g.colors == ("red", "blue")
    assert g.edges == ((0, 1),)
    assert parse_graph(serialize_graph(g)) == g


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    '{"color_set": ["r"], "vertices": [{"id": 0, "color": "x"}], "edges": []}',
    '{"color_set": ["r"], "vertices": [{"id": 3, "color": "r"}], "edges": []}',
    '{"color_set": ["r"], "vertices": [{"id": 0, "color": "r"}], "edges": [[0, 0]]}',
    '{"color_set": ["r"], "vertices": [{"id": 0, "color": "r"}, {"id": 0, "color": "r"}]}',
    '{"color_set": ["r"], "vertices": [{"id": 0, "color": "r"}], "edges": [[0, 1]]}',
    '{"vertices": []}',
])
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_permutation_inverse():
    p = VertexPermutation((2, 0, 1))
    assert p.inverse().perm == (1, 2, 0)
    with pytest.raises(GraphError):
        VertexPermutation((0, 0, 1))


def test_random_graph_is_deterministic():
    a = random_colored_graph(8, 0.4, ["r", "b"], seed=3)
    b = random_colored_graph(8, 0.4, ["r", "b"], seed=3)
    assert a == b


@given(colored_graphs(), st.randoms(use_true_random=False))
def test_permute_preserves_structure(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = permute(g, perm)
    assert h.m == g.m
    assert sorted(h.degrees) == sorted(g.degrees)
    back = permute(h, VertexPermutation(tuple(perm)).inverse())
    assert back == g


@given(colored_graphs())
def test_components_and_betti_match_networkx(g):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    ours = sorted(map(tuple, connected_components(g)))
    theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(nxg))
    assert ours == theirs
    assert betti1(g) == len(nx.cycle_basis(nxg))
