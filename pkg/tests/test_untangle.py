import pytest

from scheme_minor.errors import HypothesisViolation, PreconditionError
from scheme_minor.graph import Graph, complete_graph, cycle_graph, path_graph
from scheme_minor.minors import check_minor_model, find_rooted_minor
from scheme_minor.mprime import build_mprime
from scheme_minor.scheme import identity_colored_scheme
from scheme_minor.untangle import cycle_order, removable_hypotheses, removable_reduction, untangle_cycle_scheme


def test_cycle_order():
    assert cycle_order(cycle_graph(5)) == [0, 1, 2, 3, 4]
    with pytest.raises(PreconditionError):
        cycle_order(path_graph(4))


def test_identity_cycle_scheme_gives_singletons():
    c = identity_colored_scheme(cycle_graph(5))
    m = untangle_cycle_scheme(c)
    assert m.branch_sets == tuple(frozenset({v}) for v in range(5))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_standard_cycle_schemes_untangle(n):
    mp = build_mprime(cycle_graph(n))
    m = untangle_cycle_scheme(mp.standard_scheme())
    assert check_minor_model(m).valid
    assert m.roots == tuple(range(n))
    # the host is 2n vertices; every branch set is connected and rooted
    assert find_rooted_minor(mp.graph, cycle_graph(n), list(range(n))) is not None


def test_untangle_rejects_non_cycle():
    with pytest.raises(PreconditionError):
        untangle_cycle_scheme(identity_colored_scheme(complete_graph(4)))


def test_even_cycle_class_with_perfect_matching():
    n = 6
    c = build_mprime(cycle_graph(n)).standard_scheme()
    red = removable_reduction(c, [0, 2, 4], [(0, 1), (2, 3), (4, 5)])
    assert red.pattern_rest.n == 3 and red.pattern_rest.m == 0
    m = red.solve()
    assert m is not None and check_minor_model(m).valid
    assert m.host == c.scheme.host and m.roots == tuple(range(n))


def test_leaf_removal():
    # a pendant vertex 3 hanging off a triangle; S is the leaf, F its only edge
    h = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    c = build_mprime(h).standard_scheme()
    red = removable_reduction(c, [3], [(3, 2)])
    assert red.single_edges == ((3, 2),)
    assert red.pattern_rest == complete_graph(3)
    m = red.solve()
    assert m is not None and check_minor_model(m).valid


def test_forest_with_a_long_path_violates_hypotheses():
    c = build_mprime(cycle_graph(6)).standard_scheme()
    problems = removable_hypotheses(c, [0, 2, 4], [(0, 1), (0, 5), (2, 3)])
    assert any("forest degree" in p for p in problems)
    with pytest.raises(HypothesisViolation):
        removable_reduction(c, [0, 2, 4], [(0, 1), (0, 5), (2, 3)])


def test_non_stable_set_rejected():
    c = build_mprime(cycle_graph(6)).standard_scheme()
    assert "S is not stable" in removable_hypotheses(c, [0, 1], [(0, 5), (1, 2)])
