import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import chromatic_bruteforce, isomorphism_class_counts
from scheme_minor.canon import are_isomorphic, automorphisms, canonical_form
from scheme_minor.coloring import chromatic_number, dsatur_coloring, k_coloring
from scheme_minor.errors import CapacityError, GraphValidationError, ParseError
from scheme_minor.graph import (
    Graph,
    ThetaSignature,
    cactus_report,
    complete_graph,
    complete_multipartite,
    components_and_blocks,
    contract_edge,
    cycle_graph,
    disjoint_union,
    find_odd_cycle,
    glue_at_vertex,
    is_bipartite,
    path_graph,
    petersen_graph,
    quotient,
    star_graph,
    theta_graph,
    theta_recognize,
)
from scheme_minor.graphio import dumps_edge_json, from_graph6, graph_from_dict, loads_edge_json, to_graph6
from scheme_minor.matching import bipartite_matching, is_matching
from scheme_minor.smallgraphs import enumerate_connected_graphs
from scheme_minor.subgraph import subgraph_contains
from strategies import graph_and_perm, graphs


def to_nx(g):
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges)
    return x


def two_triangles_sharing_vertex():
    return glue_at_vertex(complete_graph(3), 0, complete_graph(3), 0)


def seven_cycle_with_chord():
    return cycle_graph(7).add_edges([(0, 3)])


# -- parsing ----------------------------------------------------------------------

def test_edge_json_triangle():
    g = graph_from_dict({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
    assert g == complete_graph(3)


def test_graph6_triangle_is_Bw():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert from_graph6("Bw") == complete_graph(3)


def test_loop_rejected():
    with pytest.raises(GraphValidationError):
        graph_from_dict({"n": 2, "edges": [[0, 0]]})


def test_duplicate_edge_and_range_rejected():
    with pytest.raises(GraphValidationError):
        graph_from_dict({"n": 3, "edges": [[0, 1], [1, 0]]})
    with pytest.raises(GraphValidationError):
        graph_from_dict({"n": 2, "edges": [[0, 2]]})


def test_json_error_reports_position():
    with pytest.raises(ParseError) as info:
        loads_edge_json('{"n": 3,\n "edges": [[0, 1],, ]}')
    assert "line 2" in str(info.value)


def test_graph6_errors_report_byte():
    with pytest.raises(ParseError) as info:
        from_graph6("B ")
    assert info.value.position is not None
    with pytest.raises(ParseError):
        from_graph6("Bww")  # one data byte too many


def test_graph6_header_and_large_n():
    g = path_graph(70)
    text = to_graph6(g)
    assert text.startswith("~")
    assert from_graph6(">>graph6<<" + text) == g


@given(graphs(max_n=12))
def test_round_trips(g):
    assert from_graph6(to_graph6(g)) == g
    assert loads_edge_json(dumps_edge_json(g)) == g
    assert json.loads(dumps_edge_json(g))["n"] == g.n


def test_graph6_matches_networkx_encoding():
    for g in (petersen_graph(), theta_graph(0, 2, 3), star_graph(5)):
        expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert to_graph6(g) == expected


# -- contraction ------------------------------------------------------------------------

def test_contract_triangle_edge():
    g, _ = contract_edge(complete_graph(3), (0, 1))
    assert g == complete_graph(2)


def test_contract_middle_of_path():
    g, mapping = contract_edge(path_graph(4), (1, 2))
    assert g == path_graph(3)
    assert mapping == [0, 1, 1, 2]


def test_contract_c4_edge_merges_parallels():
    g, _ = contract_edge(cycle_graph(4), (0, 1))
    assert g == complete_graph(3)


def test_quotient_groups():
    g, mapping = quotient(cycle_graph(6), [{0, 1, 2}, {3, 4}])
    assert g.n == 3 and g == complete_graph(3)
    assert mapping == [0, 0, 0, 1, 1, 2]


# -- blocks, bipartiteness, thetas, cacti ----------------------------------------------

def test_blocks_examples():
    comps, dec = components_and_blocks(disjoint_union(complete_graph(3), complete_graph(3)))
    assert len(comps) == 2 and len(dec.blocks) == 2
    comps, dec = components_and_blocks(two_triangles_sharing_vertex())
    assert len(comps) == 1 and len(dec.blocks) == 2 and dec.cut_vertices == {0}
    comps, dec = components_and_blocks(cycle_graph(5))
    assert len(comps) == 1 and len(dec.blocks) == 1 and not dec.cut_vertices


@given(graphs(max_n=9))
def test_blocks_match_networkx(g):
    _, dec = components_and_blocks(g)
    x = to_nx(g)
    expected = sorted(tuple(sorted(b)) for b in nx.biconnected_components(x))
    expected += [(v,) for v in range(g.n) if g.degree(v) == 0]
    assert sorted(dec.blocks) == sorted(expected)
    assert dec.cut_vertices == set(nx.articulation_points(x))


def test_bipartite_examples():
    a, b = is_bipartite(cycle_graph(6))
    assert sorted(a) == [0, 2, 4] and sorted(b) == [1, 3, 5]
    assert is_bipartite(cycle_graph(5)) is None
    assert sorted(find_odd_cycle(cycle_graph(5))) == [0, 1, 2, 3, 4]
    a, b = is_bipartite(complete_multipartite(2, 3))
    assert sorted((len(a), len(b))) == [2, 3]


@given(graphs(max_n=9))
def test_bipartite_matches_networkx(g):
    parts = is_bipartite(g)
    assert (parts is not None) == nx.is_bipartite(to_nx(g))
    if parts is None:
        cyc = find_odd_cycle(g)
        assert len(cyc) % 2 == 1
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    else:
        a, b = parts
        assert not any(g.has_edge(x, y) for x in a for y in a if x < y)
        assert not any(g.has_edge(x, y) for x in b for y in b if x < y)


def test_theta_recognize_examples():
    assert theta_recognize(complete_multipartite(2, 3)).params == (1, 1, 1)
    assert theta_recognize(seven_cycle_with_chord()).params == (0, 2, 3)
    assert theta_recognize(cycle_graph(5)) is None


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 4))
def test_theta_build_recognize_round_trip(k, l, m):
    if [k, l, m].count(0) > 1:
        return
    g = theta_graph(k, l, m)
    assert theta_recognize(g) == ThetaSignature(k, l, m)
    assert g.n == 2 + k + l + m


def test_cactus_examples():
    r = cactus_report(two_triangles_sharing_vertex())
    assert r.is_cactus and r.long_odd_cycles == 0
    assert not cactus_report(complete_graph(4)).is_cactus
    r = cactus_report(glue_at_vertex(cycle_graph(5), 0, cycle_graph(5), 0))
    assert r.is_cactus and r.long_odd_cycles == 2


# -- coloring -------------------------------------------------------------------------------

def test_chromatic_examples():
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(complete_graph(7)) == 7
    assert chromatic_number(petersen_graph()) == 3


def mycielski(g):
    n = g.n
    edges = list(g.edges)
    for u, v in g.edges:
        edges += [(u, n + v), (v, n + u)]
    edges += [(n + v, 2 * n) for v in range(n)]
    return Graph.from_edges(2 * n + 1, edges)


def test_mycielski_raises_chromatic_number():
    grotzsch = mycielski(cycle_graph(5))
    assert grotzsch.n == 11
    assert chromatic_number(grotzsch) == 4
    assert chromatic_number(mycielski(grotzsch)) == 5


@given(graphs(max_n=7))
def test_chromatic_matches_bruteforce(g):
    chi = chromatic_number(g)
    assert chi == chromatic_bruteforce(g)
    col = k_coloring(g, chi)
    assert col is not None and all(col[a] != col[b] for a, b in g.edges)
    dsatur = dsatur_coloring(g)
    assert all(dsatur[a] != dsatur[b] for a, b in g.edges)


def test_chromatic_cap():
    with pytest.raises(CapacityError):
        chromatic_number(path_graph(10), cap=5)


# -- canonical forms -----------------------------------------------------------------------------

def test_canonical_examples():
    c4 = cycle_graph(4)
    assert canonical_form(c4).encoding == canonical_form(c4.relabel([2, 0, 3, 1])).encoding
    assert canonical_form(star_graph(3)).encoding != canonical_form(path_graph(4)).encoding


def test_connected_four_vertex_classes():
    assert len(enumerate_connected_graphs(4)) == 6
    assert isomorphism_class_counts(4) == (11, 6)


@given(graph_and_perm(max_n=8))
def test_canonical_form_is_invariant(gp):
    g, perm = gp
    h = g.relabel(perm)
    cf = canonical_form(g)
    assert cf.encoding == canonical_form(h).encoding
    assert are_isomorphic(cf.graph(g), g)
    assert to_graph6(cf.graph(g)) == cf.encoding


@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_matches_networkx(a, b):
    assert are_isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_automorphism_counts():
    assert sum(1 for _ in automorphisms(complete_graph(4))) == 24
    assert sum(1 for _ in automorphisms(cycle_graph(5))) == 10
    assert sum(1 for _ in automorphisms(petersen_graph())) == 120


def test_canonical_cap():
    with pytest.raises(CapacityError):
        canonical_form(path_graph(9))


# -- matching and subgraphs -------------------------------------------------------------------------

def test_matching_examples():
    star = star_graph(3)  # centre 0
    m = bipartite_matching(star, [1, 2, 3], [0])
    assert len(m) == 1 and m[0][1] == 0
    c6 = cycle_graph(6)
    assert len(bipartite_matching(c6, [0, 2, 4], [1, 3, 5])) == 3
    assert bipartite_matching(c6, [], [1, 3, 5]) == []


@given(graphs(max_n=10))
def test_matching_size_matches_networkx(g):
    parts = is_bipartite(g)
    if parts is None:
        return
    a, b = parts
    m = bipartite_matching(g, a, b)
    assert is_matching(g, m)
    expected = len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
    assert len(m) == expected


def test_subgraph_examples():
    assert subgraph_contains(complete_graph(4), cycle_graph(4)) is not None
    assert subgraph_contains(complete_multipartite(2, 3), complete_graph(3)) is None
    emb = subgraph_contains(seven_cycle_with_chord(), theta_graph(0, 2, 3))
    assert emb is not None


@given(graphs(max_n=6), graphs(max_n=4))
def test_subgraph_matches_networkx(g, h):
    emb = subgraph_contains(g, h)
    matcher = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(h))
    assert (emb is not None) == matcher.subgraph_is_monomorphic()
    if emb is not None:
        assert len(set(emb)) == h.n
        assert all(g.has_edge(emb[a], emb[b]) for a, b in h.edges)
