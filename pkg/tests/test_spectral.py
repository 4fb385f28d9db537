import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from spectre import fixtures as F
from spectre.graph import ColoredGraph, GraphError, connected_components, permute, VertexPermutation
from spectre.spectral import (
    ConvergenceError,
    SpectrumPolicy,
    component_spectrum,
    delta1_nonzero_spectrum,
    eigenvalues_full,
    incidence,
    invariant_order,
    laplacian,
    laplacian_from_edges,
    power_method,
    scheduled_indices,
    spectrum_for_event,
)

from conftest import colored_graphs

SQRT2 = math.sqrt(2.0)


def cycle(n):
    return ColoredGraph.build(n, [(i, (i + 1) % n) for i in range(n)], ["a"] * n)


def path(n):
    return ColoredGraph.build(n, [(i, i + 1) for i in range(n - 1)], ["a"] * n)


def test_laplacian_small_cases():
    edge = ColoredGraph.build(2, [(0, 1)], ["a", "a"])
    np.testing.assert_array_equal(laplacian(edge, [0, 1]), [[1, -1], [-1, 1]])
    np.testing.assert_array_equal(laplacian(edge, [1]), [[0]])
    c4 = laplacian(cycle(4))
    assert np.all(np.diag(c4) == 2)
    with pytest.raises(GraphError):
        laplacian(edge, [0, 5])


def test_laplacian_matches_networkx():
    g = F.shrikhande()
    ref = nx.laplacian_matrix(nx.Graph(list(g.edges)), nodelist=range(16)).toarray()
    np.testing.assert_array_equal(laplacian(g), ref)


@pytest.mark.parametrize("g, expected", [
    (cycle(4), [0, 2, 2, 4]),
    (F.mono_star(), [0, 1, 1, 4]),
    (path(4), [0, 2 - SQRT2, 2, 2 + SQRT2]),
])
def test_full_spectrum_known(g, expected):
    np.testing.assert_allclose(eigenvalues_full(laplacian(g)).values, expected, atol=1e-10)


def test_full_spectrum_zero_and_empty():
    assert eigenvalues_full(np.zeros((3, 3))).values == (0.0, 0.0, 0.0)
    assert eigenvalues_full(np.zeros((0, 0))).values == ()
    with pytest.raises(ValueError):
        eigenvalues_full(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_iteration_cap_raises():
    with pytest.raises(ConvergenceError) as info:
        eigenvalues_full(laplacian(cycle(6)), max_iter=0)
    assert info.value.size == 6


def test_power_method_examples():
    edge = ColoredGraph.build(2, [(0, 1)], ["a", "a"])
    assert power_method(laplacian(edge)).value == pytest.approx(2.0, rel=1e-9)
    assert power_method(laplacian(cycle(4))).value == pytest.approx(4.0, rel=1e-6)
    assert power_method(laplacian(path(4))).value == pytest.approx(2 + SQRT2, rel=1e-6)


def test_power_method_deterministic_and_flags():
    m = laplacian(F.rook_4x4())
    a = power_method(m, seed=7)
    assert a == power_method(m, seed=7)
    capped = power_method(laplacian(path(12)), max_iter=2)
    assert not capped.converged and capped.iterations == 2


def test_scheduled_indices():
    assert scheduled_indices(9, 1 / 3) == [2, 5, 8]
    assert scheduled_indices(1, 1 / 3) == [0]
    assert scheduled_indices(0, 0.5) == []
    for k in range(1, 60):
        idx = scheduled_indices(k, 1 / 3)
        assert len(idx) == math.ceil(k / 3)
        assert idx[-1] == k - 1
        assert idx == sorted(set(idx))
    assert scheduled_indices(5, 1.0) == [0, 1, 2, 3, 4]


def test_policy_validation():
    with pytest.raises(ValueError):
        SpectrumPolicy(fraction=0.0)
    with pytest.raises(ValueError):
        SpectrumPolicy(threshold=0)
    with pytest.raises(ValueError):
        SpectrumPolicy(mode="lanczos")


def test_spectrum_for_event_modes():
    g = path(12)
    comp = list(range(12))
    full = spectrum_for_event(g, comp, SpectrumPolicy(), 0, 1)
    ref = eigenvalues_full(laplacian(g)).values[1:]
    np.testing.assert_allclose(full.values, ref, atol=1e-12)
    part = spectrum_for_event(g, comp, SpectrumPolicy(mode="partial"), 0, 1)
    assert part.method == "power" and len(part.values) == 1
    assert part.values[0] == pytest.approx(max(ref), rel=1e-6)
    small = spectrum_for_event(g, [0, 1, 2], SpectrumPolicy(mode="partial"), 0, 1)
    assert small.method == "exact"
    sched = SpectrumPolicy(mode="scheduled")
    assert spectrum_for_event(g, comp, sched, 0, 9).skipped
    assert spectrum_for_event(g, comp, sched, 8, 9).values == full.values
    assert spectrum_for_event(g, [3], SpectrumPolicy(), 0, 1).values == ()


def test_delta1_examples():
    edge = ColoredGraph.build(2, [(0, 1)], ["a", "a"])
    np.testing.assert_allclose(delta1_nonzero_spectrum(edge).values, [2.0])
    np.testing.assert_allclose(delta1_nonzero_spectrum(cycle(4)).values, [2, 2, 4], atol=1e-10)
    tree = F.mono_star()
    np.testing.assert_allclose(delta1_nonzero_spectrum(tree).values,
                               component_spectrum(range(4), tree.edges).values, atol=1e-10)


@given(colored_graphs(min_n=2, max_n=10))
def test_trace_and_zero_multiplicity(g):
    w = np.array(eigenvalues_full(laplacian(g)).values)
    assert abs(w.sum() - 2 * g.m) <= 1e-9
    assert np.all(w >= -1e-9)
    assert int(np.sum(np.abs(w) < 1e-8)) == len(connected_components(g))
    np.testing.assert_allclose(w, np.linalg.eigvalsh(laplacian(g)), atol=1e-9)


@given(colored_graphs(min_n=2, max_n=10))
def test_edge_laplacian_kernel_is_betti1(g):
    for comp in connected_components(g):
        vs = set(comp)
        edges = [e for e in g.edges if e[0] in vs]
        if not edges:
            continue
        b = incidence(comp, edges)
        w = np.linalg.eigvalsh(b.T @ b)
        assert int(np.sum(np.abs(w) < 1e-8)) == len(edges) - len(comp) + 1


@given(colored_graphs(min_n=2, max_n=10))
def test_power_method_brackets_lambda_max(g):
    lam = max(eigenvalues_full(laplacian(g)).values)
    if lam == 0:
        return
    est = power_method(laplacian(g), tol=1e-10)
    assert est.converged
    assert lam * (1 - 1e-6) <= est.value <= lam + 1e-6


@given(colored_graphs(min_n=2, max_n=10))
def test_invariant_order_gives_identical_matrices(g):
    perm = VertexPermutation.random(g.n, g.m)
    h = permute(g, perm)
    for comp in connected_components(g):
        img = [perm.perm[v] for v in comp]
        a = laplacian_from_edges(invariant_order(comp, g.edges), g.edges)
        b = laplacian_from_edges(invariant_order(img, h.edges), h.edges)
        assert list(np.diag(a)) == list(np.diag(b))
