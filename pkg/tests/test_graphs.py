import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings

from starprism.errors import DisconnectedGraphError, InvalidParameterError, UsageError
from starprism.graphs import (
    Graph, VertexKey, all_pairs_distances, build_complete, build_cycle, build_star, export_graph,
    parse_graph, prismatic_network, strong_product,
)

from conftest import connected_graphs, cycle_distance, star_distance


def test_star_shape():
    g = build_star(4)
    assert g.vertex_count == 5
    assert len(g.edges) == 4
    assert g.degree(0) == 4
    assert all(not g.has_edge(a, b) for a, b in itertools.combinations(range(1, 5), 2))


def test_star_one_is_an_edge():
    g = build_star(1)
    assert (g.vertex_count, len(g.edges)) == (2, 1)
    assert all_pairs_distances(g).diameter == 1
    assert not g.in_paper_range


def test_star_two_is_a_path():
    dm = all_pairs_distances(build_star(2))
    assert dm.diameter == 2
    assert dm[1, 2] == 2


def test_star_zero_rejected():
    with pytest.raises(InvalidParameterError):
        build_star(0)


def test_cycle_shape():
    g = build_cycle(6)
    assert g.vertex_count == 6 and len(g.edges) == 6
    assert all(g.degree(v) == 2 for v in range(6))
    assert all_pairs_distances(g).diameter == 3


def test_odd_cycle_diameter_is_floor():
    assert all_pairs_distances(build_cycle(5)).diameter == 2


def test_cycle_too_short():
    with pytest.raises(InvalidParameterError):
        build_cycle(2)


def test_product_of_edges_is_k4():
    k2 = build_complete(2)
    g = strong_product(k2, k2)
    assert g.vertex_count == 4
    assert len(g.edges) == 6


def test_prismatic_counts():
    g = prismatic_network(4, 6)
    assert g.vertex_count == 30
    # |V1||E2| + |V2||E1| + 2|E1||E2| with |V1|=5, |E1|=4, |V2|=|E2|=6
    assert len(g.edges) == 5 * 6 + 6 * 4 + 2 * 4 * 6 == 102


@pytest.mark.parametrize("n,m", [(2, 4), (4, 6), (3, 5), (1, 3)])
def test_product_adjacency_matches_definition(n, m):
    s, c = build_star(n), build_cycle(m)
    g = strong_product(s, c)
    pairs = [(a, b) for b in range(m) for a in range(n + 1)]
    expected = 0
    for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
        adjacent = ((a1 == a2 and c.has_edge(b1, b2))
                    or (b1 == b2 and s.has_edge(a1, a2))
                    or (s.has_edge(a1, a2) and c.has_edge(b1, b2)))
        assert g.has_edge(g.vertex_id(a1, b1), g.vertex_id(a2, b2)) == adjacent
        expected += adjacent
    assert len(g.edges) == expected


def test_vertex_keys_unique_and_ordered():
    g = prismatic_network(3, 5)
    assert len(set(g.vertices)) == g.vertex_count
    assert list(g.vertices) == sorted(g.vertices)
    assert g.vertices[g.vertex_id(2, 4)] == VertexKey(cycle_index=4, star_index=2)


def test_known_distances():
    dm = all_pairs_distances(prismatic_network(4, 6))
    g = dm.graph
    assert dm[g.vertex_id(1, 0), g.vertex_id(2, 0)] == 2
    assert dm.diameter == 3


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("m", range(4, 12))
def test_distance_law(n, m):
    g = prismatic_network(n, m)
    dm = all_pairs_distances(g)
    for u, v in itertools.product(range(g.vertex_count), repeat=2):
        ku, kv = g.vertices[u], g.vertices[v]
        want = max(star_distance(ku.star_index, kv.star_index),
                   cycle_distance(ku.cycle_index, kv.cycle_index, m))
        assert dm[u, v] == want
    assert dm.diameter == max(2, m // 2)


@pytest.mark.parametrize("n,m", [(2, 4), (3, 7), (5, 6)])
def test_substar_decomposition(n, m):
    g = prismatic_network(n, m)
    for j in range(m):
        layer = [g.vertex_id(i, j) for i in range(n + 1)]
        inside = {(a, b) for a, b in itertools.combinations(layer, 2) if g.has_edge(a, b)}
        center = layer[0]
        assert inside == {(center, leaf) for leaf in layer[1:]}


def test_disconnected_graph_reports_pair():
    g = Graph(4, ((0, 1), (2, 3)))
    with pytest.raises(DisconnectedGraphError) as info:
        all_pairs_distances(g)
    assert info.value.pair == (0, 2)


def test_graph_rejects_self_loops_and_duplicates():
    with pytest.raises(InvalidParameterError):
        Graph(2, ((0, 0),))
    with pytest.raises(InvalidParameterError):
        Graph(2, ((0, 1), (1, 0)))


def _check_distance_invariants(dm):
    d = dm.dist
    assert (d == d.T).all()
    assert (np.diag(d) == 0).all()
    off = d[~np.eye(dm.size, dtype=bool)]
    assert (off >= 1).all()
    # triangle inequality: d[i,k] <= d[i,j] + d[j,k]
    assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()
    assert dm.diameter == (d.max() if dm.size else 0)


@pytest.mark.parametrize("g", [build_star(5), build_cycle(7), prismatic_network(2, 5),
                               prismatic_network(3, 8)], ids=str)
def test_distance_matrix_invariants_constructed(g):
    _check_distance_invariants(all_pairs_distances(g))


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_distance_matrix_invariants_random(g):
    _check_distance_invariants(all_pairs_distances(g))


def test_dot_export():
    text = export_graph(build_cycle(3), "dot").decode()
    assert text.count(" -- ") == 3
    assert sum(1 for line in text.splitlines() if line.strip().endswith(";") and "--" not in line) == 3


def test_dot_product_labels():
    text = export_graph(prismatic_network(2, 4), "dot").decode()
    lines = text.splitlines()
    assert lines[1].strip() == "s0c1;"
    assert "s2c4;" in text


def test_json_export():
    data = json.loads(export_graph(build_star(2), "adjacency-json"))
    assert data["vertex_count"] == 3
    assert data["edges"] == sorted(data["edges"])


@pytest.mark.parametrize("g", [prismatic_network(3, 4), build_star(3), build_cycle(5),
                               strong_product(build_complete(2), build_cycle(4))], ids=str)
def test_json_round_trip(g):
    back = parse_graph(export_graph(g, "adjacency-json"))
    assert back.vertex_count == g.vertex_count
    assert back.edges == g.edges
    if g.kind != "generic":
        assert back == g


def test_export_is_deterministic():
    g = prismatic_network(3, 4)
    assert export_graph(g, "dot") == export_graph(prismatic_network(3, 4), "dot")


def test_unknown_format():
    with pytest.raises(UsageError):
        export_graph(build_star(2), "graphml")


@pytest.mark.parametrize("blob,field", [
    ('{"kind": "star", "vertex_count": 3}', "edges"),
    ('{"kind": "blob", "vertex_count": 3, "edges": []}', "kind"),
    ('{"kind": "star", "n": "x", "vertex_count": 3, "edges": []}', "n"),
    ('{"kind": "star", "n": 2, "vertex_count": 4, "edges": [[0,1],[0,2]]}', "vertex_count"),
])
def test_parse_errors_name_the_field(blob, field):
    with pytest.raises(UsageError, match=field):
        parse_graph(blob)
