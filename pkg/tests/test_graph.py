import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import masked_graphs, oracle_boundary, oracle_components, same_partition, small_graphs
from percolab import (
    CompleteGraph,
    VertexSet,
    build_graph,
    components,
    cut_edges,
    edge_boundary,
    induced_subgraph,
    is_connected,
)
from percolab.errors import (
    DuplicateEdgeError,
    MaskLengthMismatchError,
    SelfLoopError,
    SetsNotDisjointError,
    VertexOutOfRangeError,
)
from percolab.graph import census_from_labels


def test_build_canonicalises_and_sorts():
    g = build_graph(4, [(3, 1), (0, 2), (1, 0)])
    assert g.edges.tolist() == [[0, 1], [0, 2], [1, 3]]
    assert g.edge_index(3, 1) == 2
    assert g.degrees.tolist() == [2, 2, 1, 1]


def test_graph_is_immutable():
    g = build_graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        g.edges[0, 0] = 2


@pytest.mark.parametrize(
    "pairs, err, needle",
    [
        ([(0, 1), (2, 2)], SelfLoopError, "(2, 2)"),
        ([(0, 1), (1, 0)], DuplicateEdgeError, "(1, 0)"),
        ([(0, 1), (1, 5)], VertexOutOfRangeError, "(1, 5)"),
        ([(-1, 1)], VertexOutOfRangeError, "(-1, 1)"),
    ],
)
def test_build_errors_name_the_pair(pairs, err, needle):
    with pytest.raises(err, match=needle.replace("(", r"\(").replace(")", r"\)")):
        build_graph(4, pairs)


def test_triangle_boundary_and_cut():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert edge_boundary(g, [0]) == 2
    assert edge_boundary(g, VertexSet.from_ids(3, [0, 1, 2])) == 0
    assert cut_edges(g, [0], [1, 2]) == 2
    with pytest.raises(SetsNotDisjointError):
        cut_edges(g, [0, 1], [1, 2])
    with pytest.raises(VertexOutOfRangeError):
        edge_boundary(g, [3])


@pytest.mark.parametrize("n", range(1, 9))
def test_complete_graph_matches_materialised(n):
    k = CompleteGraph(n)
    ref = build_graph(n, list(itertools.combinations(range(n), 2)))
    assert k.m == ref.m
    assert np.array_equal(k.edges, ref.edges)
    idx = np.arange(k.m)
    assert np.array_equal(np.stack(k.endpoints(idx), axis=1), ref.edges)
    for u, v in ref.edges.tolist():
        assert k.edge_index(u, v) == ref.edge_index(u, v) == k.edge_index(v, u)
    rng = np.random.default_rng(n)
    for _ in range(5):
        a = rng.random(n) < 0.5
        b = ~a & (rng.random(n) < 0.5)
        assert k.boundary_size(a) == ref.boundary_size(a)
        assert k.cut_size(a, b) == ref.cut_size(a, b)
        assert np.array_equal(k.neighbor_counts(a), ref.neighbor_counts(a))
    for v in range(n):
        assert np.array_equal(np.sort(k.neighbors(v)), np.sort(ref.neighbors(v)))
        assert np.array_equal(np.sort(k.incident_edge_ids(v)), np.sort(ref.incident_edge_ids(v)))


def test_complete_graph_large_is_implicit():
    k = CompleteGraph(50_000)
    assert k.m == 50_000 * 49_999 // 2
    u, v = k.endpoints([0, k.m - 1])
    assert (u.tolist(), v.tolist()) == ([0, 49_998], [1, 49_999])
    assert k.regular_degree() == 49_999


def test_vertex_set_basics():
    s = VertexSet.from_ids(5, [3, 1])
    assert list(s) == [1, 3] and len(s) == 2 and 3 in s and 0 not in s
    assert s.complement() == VertexSet.from_ids(5, [0, 2, 4])
    assert hash(s) == hash(VertexSet.from_ids(5, [1, 3]))
    with pytest.raises(VertexOutOfRangeError):
        VertexSet.from_ids(5, [5])


def test_components_examples():
    g = build_graph(6, [(0, 1), (1, 2), (3, 4)])
    c = components(g)
    assert c.sizes.tolist() == [3, 2, 1]
    assert c.component_id.tolist() == [0, 0, 0, 1, 1, 2]
    assert (c.L1, c.L2, c.count) == (3, 2, 3)
    single = components(build_graph(3, [(0, 1), (1, 2)]))
    assert single.L2 == 0


def test_census_ties_break_by_smallest_vertex():
    c = census_from_labels(np.array([7, 5, 5, 7, 9]))
    assert c.sizes.tolist() == [2, 2, 1]
    assert c.component_id.tolist() == [0, 1, 1, 0, 2]


def test_mask_length_checked():
    g = build_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(MaskLengthMismatchError):
        components(g, np.ones(3, dtype=bool))


@settings(max_examples=200, deadline=None)
@given(masked_graphs())
def test_components_match_bfs_oracle(gm):
    g, mask = gm
    kept = [tuple(e) for e, k in zip(g.edges.tolist(), mask) if k]
    sizes, label = oracle_components(g.n, kept)
    c = components(g, mask)
    assert c.sizes.tolist() == sizes
    assert same_partition(c.component_id.tolist(), label)
    assert c.sizes.sum() == g.n


@settings(max_examples=100, deadline=None)
@given(small_graphs(), st.data())
def test_boundary_matches_oracle(g, data):
    members = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
    assert edge_boundary(g, members) == oracle_boundary(g.edges.tolist(), members)


@settings(max_examples=100, deadline=None)
@given(masked_graphs())
def test_adding_edges_never_splits(gm):
    g, mask = gm
    more = mask | (np.arange(g.m) % 2 == 0)
    a, b = components(g, mask), components(g, more)
    assert b.count <= a.count and b.L1 >= a.L1


@settings(max_examples=50, deadline=None)
@given(small_graphs(), st.data())
def test_induced_subgraph(g, data):
    keep = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
    h, ids = induced_subgraph(g, keep)
    assert ids.tolist() == sorted(keep)
    expect = [(u, v) for u, v in g.edges.tolist() if u in keep and v in keep]
    assert [tuple(ids[e]) for e in h.edges.tolist()] == expect


def test_is_connected():
    assert is_connected(build_graph(3, [(0, 1), (1, 2)]))
    assert not is_connected(build_graph(3, [(0, 1)]))
