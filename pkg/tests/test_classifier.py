import networkx as nx
import pytest
from hypothesis import given, settings

from scheme_minor.classifier import (
    CONTRACTIBLE,
    NOT_CONTRACTIBLE,
    UNKNOWN,
    WEAK_NOTE,
    classify,
    detect_bad_theta,
    detect_two_long_odd,
    negative_firings,
    simple_cycles,
    theta_witness_graph,
)
from scheme_minor.errors import CapacityError
from scheme_minor.graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    glue_at_vertex,
    petersen_graph,
    star_graph,
    theta_recognize,
)
from scheme_minor.smallgraphs import connected_graphs_up_to
from strategies import graphs

SPECIAL = [nx.complete_graph(4), nx.complete_multipartite_graph(1, 1, 2), nx.complete_multipartite_graph(1, 1, 3),
           nx.complete_multipartite_graph(2, 3)]


def to_nx(g):
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges)
    return x


def pattern_holds(g):
    """Block pattern checked with networkx only."""
    x = to_nx(g)
    for comp in nx.connected_components(x):
        sub = x.subgraph(comp)
        special = 0
        for block in nx.biconnected_components(sub):
            b = sub.subgraph(block)
            if b.number_of_nodes() <= 3:
                continue
            is_cycle = all(d == 2 for _, d in b.degree())
            if is_cycle or any(nx.is_isomorphic(b, s) for s in SPECIAL):
                special += 1
            else:
                return False
        if special > 1:
            return False
    return True


def two_c5_sharing_vertex():
    return glue_at_vertex(cycle_graph(5), 0, cycle_graph(5), 0)


def test_tree_contractible():
    v = classify(Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]))
    assert v.status == CONTRACTIBLE and v.rule == "COR_FORESTS"


def test_two_five_cycles_not_contractible():
    v = classify(two_c5_sharing_vertex())
    assert v.status == NOT_CONTRACTIBLE and v.rule == "COR_TWO_ODD"


def test_k7_chromatic():
    v = classify(complete_graph(7))
    assert v.status == NOT_CONTRACTIBLE and v.rule == "THM_CHROMATIC"
    assert v.witness == {"chromatic_number": 7}


def test_cactus_and_summary_rules():
    cactus = glue_at_vertex(complete_graph(3), 0, cycle_graph(6), 0)
    assert classify(cactus).rule == "COR_CACTUS"
    v = classify(glue_at_vertex(complete_graph(3), 2, complete_multipartite(2, 3), 0))
    assert v.status == CONTRACTIBLE and v.rule == "COR_SUMMARY"


def test_componentwise():
    # one special block in each component is fine
    g = disjoint_union(complete_graph(4), cycle_graph(5))
    assert classify(g).status == CONTRACTIBLE
    g = disjoint_union(complete_graph(4), two_c5_sharing_vertex())
    assert classify(g).status == NOT_CONTRACTIBLE


def test_weak_note_only_annotates():
    for g in (complete_graph(5), complete_multipartite(3, 3)):
        v = classify(g)
        assert v.status == UNKNOWN and WEAK_NOTE in v.annotations


def test_bad_theta_examples():
    wit = detect_bad_theta(cycle_graph(7).add_edges([(0, 3)]))
    assert wit["signature"] == [0, 2, 3]
    assert detect_bad_theta(complete_graph(4)) is None
    # 6-cycle with the diagonal 0-3 subdivided once
    g = Graph.from_edges(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (6, 3)])
    wit = detect_bad_theta(g)
    assert wit["signature"] == [1, 2, 2]
    v = classify(g)
    assert v.status == NOT_CONTRACTIBLE and v.rule == "THM_THETA_SUBGRAPH"


def test_two_long_odd_examples():
    assert detect_two_long_odd(two_c5_sharing_vertex()) is not None
    assert detect_two_long_odd(cycle_graph(5)) is None
    a, b = detect_two_long_odd(petersen_graph())
    assert len(a) >= 5 and len(b) >= 5 and len(a) % 2 == len(b) % 2 == 1
    assert len(set(a) & set(b)) <= 1


def test_cycle_cap_is_indeterminate():
    with pytest.raises(CapacityError):
        simple_cycles(complete_graph(7), cap=10)
    notes = []
    fired = negative_firings(two_c5_sharing_vertex(), cycle_cap=1, annotations=notes)
    assert not any(rule == "COR_TWO_ODD" for rule, _ in fired)
    assert any("COR_TWO_ODD" in n for n in notes)


def test_deep_finds_mprime_negative_or_partial():
    v = classify(petersen_graph(), "deep", node_limit=1000)
    assert v.status == NOT_CONTRACTIBLE  # two disjoint 5-cycles, found in fast mode already
    g = star_graph(3)
    assert classify(g, "deep").status == CONTRACTIBLE


@given(graphs(max_n=8))
def test_verdict_invariants(g):
    v = classify(g)
    if v.status == CONTRACTIBLE:
        assert pattern_holds(g)
        assert negative_firings(g) == []
    else:
        assert not pattern_holds(g)
    if v.rule == "THM_THETA_SUBGRAPH":
        theta = theta_witness_graph(v.witness)
        sig = theta_recognize(theta)
        assert sig is not None
        assert sum(p % 2 for p in sig.params) == 1
        assert sum(nx.triangles(to_nx(theta)).values()) == 0
        assert all(g.has_edge(a, b) for a, b in v.witness["edges"])
    if v.rule == "COR_TWO_ODD":
        a, b = v.witness["cycles"]
        assert len(set(a) & set(b)) <= 1
        for c in (a, b):
            assert len(c) >= 5 and len(c) % 2 == 1
            assert all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


@settings(max_examples=25)
@given(graphs(min_n=1, max_n=6, connected=True))
def test_deep_subsumes_fast(g):
    fast = classify(g, "fast")
    deep = classify(g, "deep")
    if fast.status != UNKNOWN:
        assert (deep.status, deep.rule) == (fast.status, fast.rule)


def test_every_small_graph_is_contractible_by_pattern():
    for g in connected_graphs_up_to(4):
        assert classify(g).status == CONTRACTIBLE
