import math

import networkx as nx
from hypothesis import given

from spectre import fixtures as F
from spectre.filtration import EDGE, VERTEX, induce, subgraph_at, timeline
from spectre.persistence import INF, compute_ph, compute_ph0, pairs_to_json, rank_from_keys, sweep

from conftest import colored_graphs, color_specs


def test_square_vertex_filtration():
    g = F.two_colored_square()
    ph = compute_ph(g, induce(F.square_spec(), g), VERTEX)
    assert sorted(ph.dim0) == [(1, 1), (1, INF), (2, 2), (2, 2)]
    assert list(ph.dim1) == [(2, INF)]
    assert pairs_to_json(ph.dim1) == [[2.0, "inf"]]


def test_square_edge_filtration():
    g = F.two_colored_square()
    ph = compute_ph(g, induce(F.square_spec(), g), EDGE)
    assert sorted(ph.dim0) == [(0, 1), (0, 2), (0, 3), (0, INF)]
    assert list(ph.dim1) == [(3, INF)]


def test_trace_groups_and_snapshots():
    g = F.two_colored_square()
    vals = induce(F.square_spec(), g)
    trace = sweep(g, vals.edge, rank_from_keys(list(range(4))), want_snapshots=True)
    assert trace.group_times == (1.0, 2.0, 3.0)
    assert [m.time for m in trace.merges] == [1.0, 2.0, 3.0]
    assert len(trace.cycles) == 1 and trace.cycles[0].group == 2
    assert trace.members(0, 0) == [0, 1]
    assert trace.members(1, 3) == [2, 3]
    assert trace.final_members(2) == [0, 1, 2, 3]


def test_larger_rank_dies():
    g = F.mono_path()  # edges (0,2) (1,2) (1,3), all value 1
    trace = sweep(g, [1.0, 1.0, 1.0], [3, 2, 1, 0])
    assert sorted(m.dying for m in trace.merges) == [0, 1, 2]
    assert all(m.survivor == 3 for m in trace.merges[-1:])


def _betti_oracle(g, vals, kind, t):
    sub = subgraph_at(g, vals, kind, t)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(sub.n))
    nxg.add_edges_from(sub.edges)
    b0 = nx.number_connected_components(nxg)
    return b0, sub.m - sub.n + b0


@given(colored_graphs(), color_specs())
def test_pairs_reproduce_betti_numbers(g, spec):
    vals = induce(spec, g)
    for kind in (VERTEX, EDGE):
        ph = compute_ph(g, vals, kind)
        assert len(ph.dim0) == g.n
        for t in timeline(vals, kind):
            alive0 = sum(1 for b, d in ph.dim0 if b <= t < d)
            alive1 = sum(1 for b, d in ph.dim1 if b <= t)
            assert (alive0, alive1) == _betti_oracle(g, vals, kind, t)


@given(colored_graphs(), color_specs())
def test_deaths_not_before_births(g, spec):
    pairs, _ = compute_ph0(g, induce(spec, g), VERTEX)
    assert all(b <= d for b, d in pairs)
    assert sum(math.isinf(d) for _, d in pairs) == len(_components(g))


def _components(g):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    return list(nx.connected_components(nxg))
