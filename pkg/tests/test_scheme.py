import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import random_hscheme
from scheme_minor.errors import PreconditionError
from scheme_minor.graph import Graph, complete_graph, complete_multipartite, cycle_graph, path_graph, star_graph
from scheme_minor.minors import MinorModel, check_minor_model, find_rooted_minor
from scheme_minor.mprime import build_mprime
from scheme_minor.scheme import (
    ColoredScheme,
    HScheme,
    identity_colored_scheme,
    identity_scheme,
    normalize_scheme,
    replay_trace,
    validate_colored_scheme,
    validate_hscheme,
)
from scheme_minor.smallgraphs import enumerate_connected_graphs


def k2_scheme(n, edges, path):
    return HScheme.build(complete_graph(2), Graph.from_edges(n, edges), [0, n - 1], {(0, 1): path})


def test_identity_scheme_valid():
    for h in (complete_graph(4), cycle_graph(5), path_graph(3)):
        assert validate_hscheme(identity_scheme(h)).valid


def test_triangle_through_star_centre_invalid():
    # pattern K3 rooted at the leaves 1,2,3 of a star; every path uses the centre
    s = HScheme.build(complete_graph(3), star_graph(3), [1, 2, 3], {(0, 1): [1, 0, 2], (0, 2): [1, 0, 3], (1, 2): [2, 0, 3]})
    rep = validate_hscheme(s)
    assert not rep.valid
    assert rep.clauses() == {"common_endpoint"}


def test_path_through_third_root_invalid():
    s = HScheme.build(path_graph(3), path_graph(3), [0, 1, 2], {(0, 1): [0, 1], (1, 2): [1, 2]})
    assert validate_hscheme(s).valid
    bad = HScheme.build(complete_graph(3), path_graph(3), [0, 1, 2], {(0, 1): [0, 1], (1, 2): [1, 2], (0, 2): [0, 1, 2]})
    assert "path_avoids_roots" in validate_hscheme(bad).clauses()


def test_missing_path_and_broken_path():
    s = HScheme.build(complete_graph(3), complete_graph(3), [0, 1, 2], {(0, 1): [0, 1], (1, 2): [1, 2]})
    assert "coverage" in validate_hscheme(s).clauses()
    s = HScheme.build(complete_graph(2), path_graph(3), [0, 2], {(0, 1): [0, 2]})
    assert "path" in validate_hscheme(s).clauses()


def test_standard_mprime_c4_scheme_is_colored():
    c = build_mprime(cycle_graph(4)).standard_scheme()
    rep = validate_colored_scheme(c)
    assert rep.valid, rep.to_dict()


def test_mprime_k2_scheme_fails_degree_clause():
    c = build_mprime(complete_graph(2)).standard_scheme()
    rep = validate_colored_scheme(c)
    assert rep.clauses() == {"min_degree"}


def test_identity_colored_scheme_valid():
    assert validate_colored_scheme(identity_colored_scheme(complete_graph(4))).valid


def test_bad_colorings_caught():
    c = identity_colored_scheme(complete_graph(3))
    assert "roots_fixed" in validate_colored_scheme(ColoredScheme(c.scheme, (1, 0, 2))).clauses()
    c = build_mprime(cycle_graph(4)).standard_scheme()
    colors = list(c.colors)
    colors[4] = 2  # second copy of vertex 0 now carries a foreign color
    rep = validate_colored_scheme(ColoredScheme(c.scheme, tuple(colors)))
    assert "path_colors" in rep.clauses()


def test_derived_properties_hold_on_standard_schemes():
    for n in range(2, 6):
        for h in enumerate_connected_graphs(n):
            if min(h.degree(v) for v in h.vertices) < 2:
                continue
            rep = validate_colored_scheme(build_mprime(h).standard_scheme())
            assert rep.valid and not rep.info.get("implementation_bug")


def test_json_round_trip():
    c = build_mprime(complete_multipartite(2, 3)).standard_scheme()
    assert ColoredScheme.from_dict(c.to_dict()) == c
    assert HScheme.from_dict(c.scheme.to_dict()) == c.scheme


# -- normalization ---------------------------------------------------------------------

def test_single_path_vertex_contracted():
    s = k2_scheme(3, [(0, 1), (1, 2)], [0, 1, 2])
    res = normalize_scheme(s)
    assert res.colored.scheme.host == complete_graph(2)
    assert [t.rule for t in res.trace] == ["single_path"]


def test_colored_input_is_fixed_point():
    c = build_mprime(cycle_graph(5)).standard_scheme()
    res = normalize_scheme(c.scheme)
    assert res.trace == []
    assert res.colored == c


def test_chord_example_reaches_single_edge():
    # u=0, a=1, b=2, v=3; path u-a-b-v plus the chord u-b
    s = k2_scheme(4, [(0, 1), (1, 2), (2, 3), (0, 2)], [0, 1, 2, 3])
    res = normalize_scheme(s)
    assert res.colored.scheme.host == complete_graph(2)
    assert validate_colored_scheme(res.colored).valid
    # the unused chord is dropped first, then both inner vertices are single-path
    assert [t.op for t in res.trace][0] == "delete_edge"


def test_invalid_input_rejected():
    s = HScheme.build(complete_graph(3), star_graph(3), [1, 2, 3], {(0, 1): [1, 0, 2], (0, 2): [1, 0, 3], (1, 2): [2, 0, 3]})
    with pytest.raises(PreconditionError):
        normalize_scheme(s)


@given(st.integers(0, 10**6))
def test_normalization_properties(seed):
    s = random_hscheme(random.Random(seed))
    assert validate_hscheme(s).valid
    res = normalize_scheme(s)
    c = res.colored
    assert validate_colored_scheme(c).valid
    replayed, survivors = replay_trace(s.host, res.trace)
    assert replayed == c.scheme.host
    assert survivors == res.vertex_map
    # roots survive and classes partition the kept part of the input host
    assert all(s.roots[v] in res.classes[c.scheme.roots[v]] for v in range(s.pattern.n))
    seen = [x for cls in res.classes for x in cls]
    assert len(seen) == len(set(seen))


@given(st.integers(0, 10**6))
def test_normalized_host_is_a_rooted_minor(seed):
    s = random_hscheme(random.Random(seed), max_pattern=4, max_host=10)
    res = normalize_scheme(s)
    # each class is connected in the input host, so classes form a minor model of the output host
    model = MinorModel.build(res.colored.scheme.host, s.host, res.classes, None)
    assert check_minor_model(model).valid
    # a rooted pattern model in the normalized host lifts through the classes
    out = res.colored.scheme
    found = find_rooted_minor(out.host, out.pattern, list(out.roots))
    if found is not None:
        lifted = [set().union(*(set(res.classes[y]) for y in bs)) for bs in found.branch_sets]
        assert check_minor_model(MinorModel.build(s.pattern, s.host, lifted, list(s.roots))).valid
