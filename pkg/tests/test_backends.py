"""Compiled and pure-Python kernels must agree bit for bit."""
import itertools

import networkx as nx
import numpy as np
import pytest

from spectre import _pykernels
from spectre._backend import BACKEND, available_backends


def _random_sweep_input(rng, n, m):
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    idx = rng.choice(len(pairs), size=min(m, len(pairs)), replace=False)
    e = np.array([pairs[i] for i in sorted(idx)], dtype=np.int64).reshape(-1, 2)
    vals = np.sort(rng.integers(1, 4, size=len(e)).astype(float))
    rank = rng.permutation(n).astype(np.int64)
    return e, vals, rank


def test_backend_name():
    assert BACKEND in available_backends()


def test_sweep_parity(backend):
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(1, 12))
        e, vals, rank = _random_sweep_input(rng, n, int(rng.integers(0, 20)))
        ref = _pykernels.sweep(n, e[:, 0], e[:, 1], vals, rank, True)
        got = backend.sweep(n, e[:, 0], e[:, 1], vals, rank, True)
        for a, b in zip(ref, got):
            np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


def test_matching_against_networkx(backend):
    rng = np.random.default_rng(1)
    for _ in range(100):
        k = int(rng.integers(1, 8))
        allowed = rng.random((k, k)) < rng.uniform(0.1, 0.9)
        size, match = backend.max_matching(allowed)
        bg = nx.Graph()
        left = [("l", i) for i in range(k)]
        bg.add_nodes_from(left)
        bg.add_nodes_from(("r", j) for j in range(k))
        bg.add_edges_from((("l", i), ("r", j)) for i, j in zip(*np.nonzero(allowed)))
        ref = nx.bipartite.maximum_matching(bg, top_nodes=left)
        assert int(size) == len(ref) // 2
        used = [int(j) for j in np.asarray(match) if j >= 0]
        assert len(used) == len(set(used)) == int(size)
        for i, j in enumerate(np.asarray(match)):
            if j >= 0:
                assert allowed[i, j]


def test_eigen_parity_and_accuracy(backend):
    rng = np.random.default_rng(2)
    for n in itertools.chain(range(1, 10), [15, 25]):
        a = rng.standard_normal((n, n))
        a = a + a.T
        d, e = backend.householder_tridiagonal(a.copy())
        w, ok = backend.tridiagonal_eigenvalues(d, e, 60)
        assert ok
        np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-10 * max(1.0, np.abs(a).max()))
        d2, e2 = _pykernels.householder_tridiagonal(a.copy())
        w2, _ = _pykernels.tridiagonal_eigenvalues(d2, e2, 60)
        np.testing.assert_allclose(w, w2, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max()))


def test_iteration_cap_reported(backend):
    d = np.array([1.0, 2.0, 3.0])
    e = np.array([1.0, 1.0, 0.0])
    _, ok = backend.tridiagonal_eigenvalues(d, e, 0)
    assert not ok


@pytest.mark.parametrize("flag, expected", [("1", "python"), ("0", None)])
def test_env_switch(flag, expected, monkeypatch):
    import importlib

    import spectre._backend as be

    monkeypatch.setenv("SPECTRE_PURE_PYTHON", flag)
    mod = importlib.reload(be)
    try:
        if expected:
            assert mod.BACKEND == expected
        else:
            assert mod.BACKEND in available_backends()
    finally:
        monkeypatch.delenv("SPECTRE_PURE_PYTHON")
        importlib.reload(be)
