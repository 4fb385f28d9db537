import itertools
import math

import pytest
from hypothesis import given, strategies as st

from spectre import descriptors as D
from spectre import fixtures as F
from spectre.filtration import ColorFiltrationSpec
from spectre.metrics import (
    LS_D,
    RE_D,
    SPEC_DPRIME,
    MetricError,
    bott,
    d_B_R,
    d_B_SpecR,
    diagram_distance,
    spec_distance,
    tuple_distance_d,
    tuple_distance_dprime,
)

from conftest import colored_graphs, color_specs

INF = math.inf
SQRT2 = math.sqrt(2.0)


def brute_bott(A, B, dist):
    if not A:
        return 0.0
    return min(max(dist(a, B[j]) for a, j in zip(A, perm))
               for perm in itertools.permutations(range(len(B))))


def test_tuple_distance_examples():
    assert tuple_distance_d((0, 1, 2, 1), (0, 1, 2, 1)) == 0
    assert tuple_distance_d((0, 1, 2, 1), (0, 2, 1, 2)) == 3
    assert tuple_distance_d((0, INF, 1, 2), (0, 3, 2, 1)) == INF
    assert tuple_distance_d((0, INF, 1, 2), (0, INF, 1, 2)) == 0


def test_spec_distance_examples():
    assert spec_distance((2,), (2,)) == 0
    assert spec_distance((2,), (2, 2, 4)) == 6
    assert spec_distance((2,), (2 - SQRT2, 2, 2 + SQRT2)) == pytest.approx(4 + 2 * SQRT2, abs=1e-12)
    assert spec_distance((), ()) == 0


def test_dprime_examples():
    assert tuple_distance_dprime((0, 1, 2, 1, (2,)), (0, 1, 2, 1, (2,))) == 0
    assert tuple_distance_dprime((0, 1, 2, 1, (2,)), (0, 2, 1, 2, (2,))) == 3
    assert tuple_distance_dprime((0, 1, 2, 1, (2,)), (0, 1, 2, 1, (2, 2, 4))) == 6


def test_bott_examples():
    A = [(0, 1, 2, 1), (0, INF, 1, 2)]
    B = [(0, 2, 1, 2), (0, INF, 1, 2)]
    r = bott(A, B)
    assert r.value == 3 and r.assignment == ((0, 0), (1, 1))
    assert bott([(0, 1, 2, 1)], [(0, 2, 1, 2)]).value == 3
    same = bott(A, A)
    assert same.value == 0 and same.assignment == ((0, 0), (1, 1))
    assert bott([], []).value == 0
    assert bott([(0, INF, 0, 0)], [(0, 1, 0, 0)]).value == INF
    with pytest.raises(MetricError):
        bott(A, B[:1])


def test_square_distances():
    g = F.two_colored_square()
    f = F.square_spec()
    d = D.compute_rephine(g, f)
    assert d_B_R(d, d) == 0
    bumped = F.square_spec().to_dict()
    bumped["f_e"]["red|red"] += 0.5
    h = ColorFiltrationSpec.from_dict(bumped)
    e = D.compute_rephine(g, h)
    assert d_B_R(d, e) == d_B_R(e, d) <= 3 * 0.5
    with pytest.raises(MetricError):
        d_B_SpecR(d, e)


def test_rbbr_lower_bound():
    g = F.rbbr_path()
    for eps in (0.1, 0.01, 0.001):
        f, h = F.rbbr_specs(eps)
        val = d_B_SpecR(D.compute_spectre(g, f), D.compute_spectre(g, h))
        assert val >= spec_distance((2,), (2 - SQRT2, 2, 2 + SQRT2)) - 1e-9


def test_mismatch_errors():
    a = D.compute_rephine(F.two_colored_square(), F.square_spec())
    b = D.compute_rephine(F.mono_star(), F.mono_spec())
    with pytest.raises(MetricError):
        diagram_distance(a, b)


def test_matching_indices_are_concatenated():
    a = D.compute_spectre(F.two_colored_square(), F.square_spec())
    res = diagram_distance(a, a)
    assert res.matching(len(a.dim0)) == [[0, 0], [1, 1], [2, 2], [3, 3], [4, 4]]


finite = st.floats(0, 5, allow_nan=False).map(lambda x: round(x, 2))
deaths = st.one_of(finite, st.just(INF))
rephine_tuples = st.tuples(st.just(0.0), deaths, finite, finite)
spectre_tuples = st.tuples(st.just(0.0), deaths, finite, finite,
                           st.lists(finite, max_size=3).map(lambda r: tuple(sorted(r))))


@given(st.integers(0, 6).flatmap(lambda k: st.tuples(
    st.lists(rephine_tuples, min_size=k, max_size=k),
    st.lists(rephine_tuples, min_size=k, max_size=k))))
def test_bott_equals_brute_force(pair):
    A, B = pair
    r = bott(A, B, RE_D)
    assert r.value == brute_bott(A, B, tuple_distance_d)
    assert sorted(j for _, j in r.assignment) == list(range(len(B)))
    if A:
        assert max(tuple_distance_d(A[i], B[j]) for i, j in r.assignment) == r.value


@given(st.integers(0, 5).flatmap(lambda k: st.tuples(
    st.lists(spectre_tuples, min_size=k, max_size=k),
    st.lists(spectre_tuples, min_size=k, max_size=k))))
def test_bott_dprime_equals_brute_force(pair):
    A, B = pair
    assert bott(A, B, SPEC_DPRIME).value == brute_bott(A, B, tuple_distance_dprime)


@given(st.lists(rephine_tuples, min_size=1, max_size=6))
def test_bott_value_is_a_pairwise_distance(A):
    B = list(reversed(A))
    r = bott(A, B)
    dists = {tuple_distance_d(a, b) for a in A for b in B}
    assert r.value in dists


@given(colored_graphs(min_n=2, max_n=7), color_specs(), color_specs(), color_specs())
def test_metric_axioms(g, f, h, k):
    for compute, dist in ((D.compute_rephine, d_B_R), (D.compute_spectre, d_B_SpecR)):
        x, y, z = compute(g, f), compute(g, h), compute(g, k)
        assert dist(x, x) == 0
        assert dist(x, y) == dist(y, x) >= 0
        assert dist(x, z) <= dist(x, y) + dist(y, z) + 1e-9
        if not D.multiset_equal(x, y, tol=0.0):
            assert dist(x, y) > 0


def test_ls_distance_kind():
    a = D.compute_ls(F.mono_star(), F.mono_spec())
    b = D.compute_ls(F.mono_path(), F.mono_spec())
    val = diagram_distance(a, b).value
    assert val == pytest.approx(bott(a.dim0, b.dim0, LS_D).value)
    assert val > 0
