from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tropgenus.errors import (DisconnectedGraphError, DuplicateEdgeError, NotOneDofError,
                              ResourceLimitError, SelfLoopError, TooFewVerticesError)
from tropgenus.graph import (Graph, canonical_form, cycle_basis, enumerate_one_dof_graphs,
                             incidence_matrix, is_one_dof, parse_graph, parse_graph6,
                             pebble_game_rank, rigid_components, shared_vertex_structure,
                             to_graph6)
from tropgenus.linalg import rank

from conftest import C4, HEX, K4, TRIANGLE, TWO_TRIANGLES


def brute_sparse(n, edges):
    """(2,3)-sparsity by checking every vertex subset."""
    for k in range(2, n + 1):
        for sub in combinations(range(n), k):
            s = set(sub)
            if sum(1 for a, b in edges if a in s and b in s) > 2 * k - 3:
                return False
    return True


def brute_rank(n, edges):
    """Largest (2,3)-sparse edge subset."""
    for k in range(len(edges), -1, -1):
        for sub in combinations(edges, k):
            if brute_sparse(n, list(sub)):
                return k


def brute_one_dof_classes(max_n):
    reps = []
    for n in range(3, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for es in combinations(pairs, 2 * n - 4):
            g = nx.Graph(list(es))
            g.add_nodes_from(range(n))
            if not nx.is_connected(g) or not brute_sparse(n, es):
                continue
            if not any(nx.is_isomorphic(g, h) for h in reps):
                reps.append(g)
    return reps


def test_parse_triangle():
    g = parse_graph(TRIANGLE)
    assert g.vertex_count == 3 and g.edge_count == 3


def test_parse_renumbers_and_comments():
    g = parse_graph("# a comment\n10 20\n20 30  # trailing\n30 10\n")
    assert g.vertex_count == 3
    assert g.edges == ((0, 1), (1, 2), (0, 2))


def test_parse_inline_commas():
    assert parse_graph("0 1,1 2,2 0") == parse_graph(TRIANGLE)


@pytest.mark.parametrize("text, exc", [
    ("0 1\n0 1", DuplicateEdgeError),
    ("0 1\n1 0", DuplicateEdgeError),
    ("0 0\n0 1", SelfLoopError),
    ("0 1\n2 3", DisconnectedGraphError),
    ("", TooFewVerticesError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_graph(text)


def test_hex_graph_parses(hex_graph):
    assert (hex_graph.vertex_count, hex_graph.edge_count) == (6, 8)


@pytest.mark.parametrize("text, ok", [(TWO_TRIANGLES, True), (C4, True), (HEX, True),
                                      (K4, False), (TRIANGLE, False)])
def test_is_one_dof(text, ok):
    assert bool(is_one_dof(parse_graph(text))) is ok


def test_k4_reason():
    assert "edge count" in is_one_dof(parse_graph(K4)).reason


@pytest.mark.parametrize("text, expected", [(TRIANGLE, 3), (K4, 5), (C4, 4)])
def test_pebble_rank_examples(text, expected):
    assert pebble_game_rank(parse_graph(text)) == expected


small_graphs = st.integers(3, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.sampled_from(list(combinations(range(n), 2))), min_size=1)))


@settings(max_examples=60, deadline=None)
@given(small_graphs)
def test_pebble_rank_matches_brute_force(ng):
    n, es = ng
    es = sorted(es)
    used = sorted({v for e in es for v in e})
    relabel = {v: i for i, v in enumerate(used)}
    g = Graph(len(used), tuple((relabel[a], relabel[b]) for a, b in es))
    assert pebble_game_rank(g) == brute_rank(g.vertex_count, list(g.edges))
    assert pebble_game_rank(g) <= 2 * g.vertex_count - 3


def test_rigid_components_examples(c4, two_triangles, hex_graph):
    assert rigid_components(c4).r == 4
    assert all(len(c.edges) == 1 for c in rigid_components(c4).components)
    d = rigid_components(two_triangles)
    assert d.r == 2 and sorted(len(c.edges) for c in d.components) == [3, 3]
    d = rigid_components(hex_graph)
    assert d.r == 6
    tri = [c for c in d.components if len(c.edges) == 3]
    assert len(tri) == 1
    # b, e, f are vertices 1, 4, 5
    assert tri[0].vertices == frozenset({1, 4, 5})


def test_rigid_components_rejects_non_one_dof():
    with pytest.raises(NotOneDofError):
        rigid_components(parse_graph(K4))


def test_decomposition_invariants():
    for g in enumerate_one_dof_graphs(6):
        d = rigid_components(g)
        assert d.r % 2 == 0
        seen = sorted(e for c in d.components for e in c.edges)
        assert seen == list(range(g.edge_count))
        for i, c in enumerate(d.components):
            assert len(c.edges) == 2 * len(c.vertices) - 3
            assert c.selected == min(c.edges) and c.selected in c.tree
            assert len(c.tree) == len(c.vertices) - 1
            assert all(d.edge_to_component[e] == i for e in c.edges)


def test_shared_vertex_structure(c4, two_triangles, hex_graph):
    assert shared_vertex_structure(rigid_components(two_triangles))
    assert not shared_vertex_structure(rigid_components(c4))
    assert not shared_vertex_structure(rigid_components(hex_graph))


@pytest.mark.parametrize("text, count", [(TRIANGLE, 1), (C4, 1), (HEX, 3), (K4, 3)])
def test_cycle_basis(text, count):
    g = parse_graph(text)
    b = cycle_basis(g)
    assert len(b.cycles) == count == g.edge_count - g.vertex_count + 1
    inc = incidence_matrix(g)
    for cyc in b.cycles:
        assert set(cyc) <= {-1, 0, 1}
        assert all(sum(row[e] * cyc[e] for e in range(g.edge_count)) == 0 for row in inc)
    assert rank([list(c) for c in b.cycles]) == count


def test_c4_cycle_has_length_four(c4):
    assert sum(1 for x in cycle_basis(c4).cycles[0] if x) == 4


def test_enumeration_counts_match_brute_force():
    oracle = brute_one_dof_classes(6)
    for max_n in (4, 5, 6):
        ours = list(enumerate_one_dof_graphs(max_n))
        assert len(ours) == sum(1 for h in oracle if h.number_of_nodes() <= max_n)


def test_enumeration_counts_frozen():
    # cumulative class counts from the brute-force oracle above (n <= 6), then frozen
    assert [len(list(enumerate_one_dof_graphs(k))) for k in (4, 5, 6, 7)] == [3, 8, 27, 132]


def test_enumeration_four_vertices():
    graphs = list(enumerate_one_dof_graphs(4))
    shapes = sorted((g.vertex_count, g.edge_count, tuple(sorted(g.degrees()))) for g in graphs)
    assert shapes == [(3, 2, (1, 1, 2)), (4, 4, (1, 2, 2, 3)), (4, 4, (2, 2, 2, 2))]
    only = list(enumerate_one_dof_graphs(4, min_degree=2))
    assert len(only) == 1 and sorted(only[0].degrees()) == [2, 2, 2, 2]


def test_enumeration_contains_two_triangles(two_triangles):
    canon = two_triangles.canonical()
    assert any(g.canonical() == canon for g in enumerate_one_dof_graphs(5))


def test_enumeration_outputs_distinct_one_dof():
    graphs = list(enumerate_one_dof_graphs(6))
    assert all(is_one_dof(g) for g in graphs)
    assert len({g.canonical_json() for g in graphs}) == len(graphs)


@pytest.mark.parametrize("k", [3, 9])
def test_enumeration_guard(k):
    with pytest.raises(ResourceLimitError):
        list(enumerate_one_dof_graphs(k))


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(6)))
def test_canonical_form_is_relabelling_invariant(perm):
    g = parse_graph(HEX)
    h = Graph(6, tuple((perm[a], perm[b]) for a, b in g.edges))
    assert canonical_form(6, g.edges)[0] == canonical_form(6, h.edges)[0]


def test_graph6_roundtrip(hex_graph):
    assert parse_graph6(to_graph6(hex_graph)).canonical() == hex_graph.canonical()


def test_json_roundtrip(hex_graph):
    assert Graph.from_json(hex_graph.to_json()) == hex_graph
