import pytest
from hypothesis import given

from scheme_minor.errors import CapacityError, PreconditionError
from scheme_minor.graph import (
    Graph,
    ThetaSignature,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    is_bipartite,
    path_graph,
    star_graph,
    theta_graph,
)
from scheme_minor.minors import check_minor_model, find_rooted_minor
from scheme_minor.mprime import (
    InducingWitness,
    MPrimeCertificate,
    alternating_cycle,
    bipartite_witness,
    build_induced_model,
    build_mprime,
    check_inducing_witness,
    decide_mprime_contractible,
    find_inducing_stable_set,
    find_shift_automorphism,
    is_shift_automorphism,
    theta_mprime_verdict,
    verify_certificate,
)
from strategies import graph_and_perm, graphs


def test_build_small_doubles():
    assert build_mprime(Graph.from_edges(1, [])).graph == Graph.from_edges(2, [])
    k2 = build_mprime(complete_graph(2)).graph
    assert k2 == Graph.from_edges(4, [(0, 3), (1, 2), (2, 3)])  # a path 0-3-2-1
    k3 = build_mprime(complete_graph(3)).graph
    assert (k3.n, k3.m) == (6, 9)


@given(graphs(max_n=7))
def test_double_structure(h):
    mp = build_mprime(h)
    n = h.n
    assert mp.graph.m == 3 * h.m
    # first copies are stable, and first-first edges never appear
    assert not any(a < n and b < n for a, b in mp.graph.edges)
    for u, v in h.edges:
        assert mp.graph.has_edge(u, n + v) and mp.graph.has_edge(n + u, n + v)


def test_shift_examples():
    pi = find_shift_automorphism(cycle_graph(5))
    assert pi is not None and is_shift_automorphism(cycle_graph(5), pi)
    assert find_shift_automorphism(path_graph(3)) is None
    pi = find_shift_automorphism(complete_graph(7))
    assert is_shift_automorphism(complete_graph(7), pi)
    assert find_shift_automorphism(Graph.from_edges(0, [])) == ()


def test_witness_examples():
    w = find_inducing_stable_set(cycle_graph(6))
    assert w.stable_set == ()
    w = bipartite_witness(star_graph(3))
    assert w.stable_set == (1, 2, 3) and w.matching == ((1, 0),)
    assert find_inducing_stable_set(theta_graph(0, 2, 3)) is None
    with pytest.raises(PreconditionError):
        bipartite_witness(cycle_graph(5))


def test_induced_model_for_star():
    h = star_graph(3)
    m = build_induced_model(h, bipartite_witness(h))
    assert check_minor_model(m).valid
    assert m.branch_sets[0] == frozenset({0, 4, 5})


def test_bad_witness_rejected():
    h = cycle_graph(6)
    bad = InducingWitness((0, 1), (), ())
    problems = check_inducing_witness(h, bad)
    assert "S is not a stable set" in problems
    with pytest.raises(PreconditionError):
        build_induced_model(h, bad)


@given(graphs(max_n=8))
def test_bipartite_witness_always_valid(h):
    if h.n == 0 or is_bipartite(h) is None:
        return
    w = bipartite_witness(h)
    assert check_inducing_witness(h, w) == []
    assert check_minor_model(build_induced_model(h, w)).valid


def test_alternating_cycle_on_even_cycle():
    h = cycle_graph(6)
    cyc = alternating_cycle(h, bipartite_witness(h))
    assert len(cyc) == 6 and len(set(cyc)) == 6
    assert all(h.has_edge(cyc[i], cyc[(i + 1) % 6]) for i in range(6))
    assert alternating_cycle(star_graph(3), bipartite_witness(star_graph(3))) is None


def test_decide_examples():
    assert decide_mprime_contractible(cycle_graph(6)).contractible
    dec = decide_mprime_contractible(theta_graph(0, 2, 3))
    assert not dec.contractible and dec.certificate.kind == "negative_exhaustive"
    dec = decide_mprime_contractible(complete_graph(7))
    assert dec.contractible and dec.certificate.kind == "shift_automorphism"
    assert dec.certificate.witness.stable_set == ()
    with pytest.raises(CapacityError):
        decide_mprime_contractible(path_graph(11))


def test_theta_closed_form_examples():
    assert theta_mprime_verdict(ThetaSignature(1, 1, 1))
    assert not theta_mprime_verdict(ThetaSignature(0, 2, 3))
    assert theta_mprime_verdict(ThetaSignature(0, 1, 1))
    assert not theta_mprime_verdict(ThetaSignature(1, 2, 2))


def test_certificate_tampering_detected():
    h = complete_multipartite(2, 3)
    cert = decide_mprime_contractible(h).certificate
    assert verify_certificate(h, cert) == []
    forged = MPrimeCertificate("negative_exhaustive")
    assert verify_certificate(h, forged)
    forged = MPrimeCertificate("shift_automorphism", InducingWitness((0,), (), ()))
    assert verify_certificate(h, forged)


@given(graph_and_perm(max_n=6))
def test_decision_is_label_invariant_and_verified(gp):
    h, perm = gp
    if h.n == 0:
        return
    a = decide_mprime_contractible(h)
    b = decide_mprime_contractible(h.relabel(perm))
    assert a.contractible == b.contractible
    assert verify_certificate(h, a.certificate) == []
    assert verify_certificate(h.relabel(perm), b.certificate) == []


@given(graphs(min_n=1, max_n=5))
def test_witness_implies_rooted_minor(h):
    w = find_inducing_stable_set(h)
    found = find_rooted_minor(build_mprime(h).graph, h, list(range(h.n)))
    if w is not None:
        assert found is not None
        assert check_minor_model(build_induced_model(h, w)).valid
    assert decide_mprime_contractible(h).contractible == (found is not None)
