"""The doubled graph M'(H), shift automorphisms, inducing stable sets, and the
exact decision whether M'(H) has a rooted H-minor at the first copies.

Vertex ``v`` of H has copies ``v`` (first copy, the root) and ``n + v``
(second copy) in M'(H).  For every edge ``uv`` of H the doubled graph has the
three edges ``u1-v2``, ``u2-v1`` and ``u2-v2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .canon import CANON_CAP, canonical_form
from .errors import CapacityError, PreconditionError
from .graph import Graph, has_triangle, is_bipartite
from .matching import bipartite_matching
from .minors import MAX_HOST_VERTICES, MinorModel, SearchStats, check_minor_model, find_rooted_minor
from .scheme import ColoredScheme, HScheme

SHIFT_CAP = 16


@dataclass(frozen=True)
class MPrimeGraph:
    base: Graph
    graph: Graph

    @property
    def roots(self) -> tuple:
        return tuple(range(self.base.n))

    def first(self, v: int) -> int:
        return v

    def second(self, v: int) -> int:
        return self.base.n + v

    def standard_scheme(self) -> ColoredScheme:
        """Colored scheme with path ``u1 v2 u2 v1`` for every base edge ``uv``."""
        n = self.base.n
        paths = {(u, v): [u, n + v, n + u, v] for u, v in self.base.sorted_edges}
        s = HScheme.build(self.base, self.graph, list(range(n)), paths)
        colors = tuple(list(range(n)) + list(range(n)))
        return ColoredScheme(s, colors)


def build_mprime(h: Graph) -> MPrimeGraph:
    n = h.n
    edges = []
    for u, v in h.sorted_edges:
        edges += [(u, n + v), (n + u, v), (n + u, n + v)]
    return MPrimeGraph(h, Graph.from_edges(2 * n, edges))


# -- shift automorphisms ----------------------------------------------------------

def is_shift_automorphism(g: Graph, pi: Sequence[int]) -> bool:
    if len(pi) != g.n or sorted(pi) != list(range(g.n)):
        return False
    if any(not g.has_edge(v, pi[v]) for v in range(g.n)):
        return False
    return all(g.has_edge(pi[u], pi[v]) for u, v in g.edges)


def find_shift_automorphism(g: Graph, cap: int = SHIFT_CAP) -> Optional[tuple]:
    """Lexicographically least automorphism moving every vertex to a neighbour.

    The empty graph has the empty permutation.  ``None`` means none exists.
    """
    if g.n > cap:
        raise CapacityError(f"shift automorphism search capped at n={cap}, got n={g.n}")
    n = g.n
    masks = g.masks
    deg = [g.degree(v) for v in range(n)]
    image = [-1] * n
    used = 0

    def extend(v: int) -> bool:
        nonlocal used
        if v == n:
            return True
        for w in sorted(g.adj[v]):
            if (used >> w) & 1 or deg[w] != deg[v]:
                continue
            if any(((masks[u] >> v) & 1) != ((masks[image[u]] >> w) & 1) for u in range(v)):
                continue
            image[v] = w
            used |= 1 << w
            if extend(v + 1):
                return True
            used &= ~(1 << w)
        image[v] = -1
        return False

    if extend(0):
        return tuple(image)
    return None


# -- inducing stable sets -------------------------------------------------------------

@dataclass(frozen=True)
class InducingWitness:
    stable_set: tuple  # sorted S
    matching: tuple  # sorted pairs (s, w) with s in S, w in N(S)
    shift: tuple  # sorted pairs (v, pi(v)) on H - (S + N(S))

    @property
    def pi(self) -> dict:
        return dict(self.shift)

    def to_dict(self) -> dict:
        return {
            "S": list(self.stable_set),
            "matching": [list(e) for e in self.matching],
            "pi": {str(v): w for v, w in self.shift},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InducingWitness":
        return cls(
            tuple(sorted(data["S"])),
            tuple(sorted(tuple(e) for e in data["matching"])),
            tuple(sorted((int(v), int(w)) for v, w in data["pi"].items())),
        )


def neighborhood(h: Graph, s: Iterable[int]) -> set:
    s = set(s)
    return {w for v in s for w in h.adj[v]} - s


def is_stable(h: Graph, s: Iterable[int]) -> bool:
    s = list(s)
    return not any(h.has_edge(a, b) for a, b in combinations(s, 2))


def check_inducing_witness(h: Graph, wit: InducingWitness) -> list:
    """Clauses of the inducing-stable-set definition that ``wit`` fails (empty if valid)."""
    problems = []
    s = set(wit.stable_set)
    if any(not 0 <= v < h.n for v in s):
        return ["stable set has vertices outside H"]
    if not is_stable(h, s):
        problems.append("S is not a stable set")
    ns = neighborhood(h, s)
    covered = set()
    for a, b in wit.matching:
        if a not in s or b not in ns or not h.has_edge(a, b):
            problems.append(f"matching edge {(a, b)} is not in [S, N(S)]")
        if a in covered or b in covered:
            problems.append(f"matching edges overlap at {(a, b)}")
        covered.update((a, b))
    if not ns <= covered:
        problems.append(f"matching leaves N(S) vertices {sorted(ns - covered)} uncovered")
    rest = sorted(set(range(h.n)) - s - ns)
    pi = wit.pi
    if sorted(pi) != rest or sorted(pi.values()) != rest:
        problems.append("pi is not a permutation of H - (S + N(S))")
    else:
        for v in rest:
            if not h.has_edge(v, pi[v]):
                problems.append(f"pi moves {v} to a non-neighbour")
        rs = set(rest)
        for u, v in h.edges:
            if u in rs and v in rs and not h.has_edge(pi[u], pi[v]):
                problems.append(f"pi does not preserve edge {(u, v)}")
    return problems


def stable_sets(h: Graph):
    """Stable sets by size ascending, then lexicographically; starts with the empty set."""
    for size in range(h.n + 1):
        any_found = False
        for s in combinations(range(h.n), size):
            if is_stable(h, s):
                any_found = True
                yield s
        if not any_found:
            return


def inducing_witness_for(h: Graph, s: Sequence[int], shift_cap: int = SHIFT_CAP) -> Optional[InducingWitness]:
    ns = neighborhood(h, s)
    m = bipartite_matching(h, s, ns)
    if len(m) != len(ns):
        return None
    rest = sorted(set(range(h.n)) - set(s) - ns)
    sub, back = h.induced_subgraph(rest)
    pi = find_shift_automorphism(sub, shift_cap)
    if pi is None:
        return None
    shift = tuple(sorted((back[i], back[pi[i]]) for i in range(sub.n)))
    return InducingWitness(tuple(sorted(s)), tuple(sorted(m)), shift)


def find_inducing_stable_set(h: Graph, cap: int = SHIFT_CAP, stats: Optional[dict] = None) -> Optional[InducingWitness]:
    """First stable set (size, then lexicographic order) that induces a rooted
    H-minor in M'(H), with its covering matching and shift automorphism."""
    if h.n > cap:
        raise CapacityError(f"stable set enumeration capped at n={cap}, got n={h.n}")
    examined = 0
    try:
        for s in stable_sets(h):
            examined += 1
            wit = inducing_witness_for(h, s, cap)
            if wit is not None:
                return wit
        return None
    finally:
        if stats is not None:
            stats["stable_sets_examined"] = stats.get("stable_sets_examined", 0) + examined


def bipartite_witness(h: Graph) -> InducingWitness:
    """Inducing stable set of a bipartite graph: the complement of a minimum
    vertex cover (built from a maximum matching by alternating reachability)."""
    parts = is_bipartite(h)
    if parts is None:
        raise PreconditionError("graph is not bipartite")
    a, b = parts
    m = bipartite_matching(h, a, b)
    mate = {}
    for x, y in m:
        mate[x] = y
        mate[y] = x
    bset = set(b)
    # alternating reachability from unmatched vertices of side A
    reached = set(x for x in a if x not in mate)
    stack = list(reached)
    while stack:
        x = stack.pop()
        if x in bset:
            y = mate.get(x)
            if y is not None and y not in reached:
                reached.add(y)
                stack.append(y)
        else:
            for y in h.adj[x]:
                if mate.get(x) != y and y not in reached:
                    reached.add(y)
                    stack.append(y)
    cover = {x for x in a if x not in reached} | {y for y in b if y in reached}
    s = sorted(set(range(h.n)) - cover)
    matching = sorted((mate[w], w) for w in cover)
    return InducingWitness(tuple(s), tuple(matching), ())


def build_induced_model(h: Graph, wit: InducingWitness) -> MinorModel:
    """Rooted H-model in M'(H) from an inducing stable set:
    ``{v1}`` on S, ``{v1, v2, u2}`` on N(S) with ``uv`` the covering matching
    edge, and ``{v1, pi(v)2}`` on the rest."""
    problems = check_inducing_witness(h, wit)
    if problems:
        raise PreconditionError("certificate fails verification: " + "; ".join(problems))
    mp = build_mprime(h)
    n = h.n
    partner = {w: s for s, w in wit.matching}
    pi = wit.pi
    sets = []
    for v in range(n):
        if v in wit.stable_set:
            sets.append({v})
        elif v in partner:
            sets.append({v, n + v, n + partner[v]})
        else:
            sets.append({v, n + pi[v]})
    return MinorModel.build(h, mp.graph, sets, list(range(n)))


def alternating_cycle(h: Graph, wit: InducingWitness) -> Optional[list]:
    """Walk from the least vertex of S alternating non-matching and matching
    edges of [S, N(S)] until an S vertex repeats; return the closed cycle.

    Needs S non-empty with every S vertex of degree at least 2.
    """
    s = set(wit.stable_set)
    if not s or any(h.degree(v) < 2 for v in s):
        return None
    ns = neighborhood(h, s)
    mate = {}
    for a, b in wit.matching:
        mate[a] = b
        mate[b] = a
    walk = [min(s)]
    first_seen = {walk[0]: 0}
    while True:
        x = walk[-1]
        options = sorted(y for y in h.adj[x] if y in ns and mate.get(x) != y)
        prev = walk[-2] if len(walk) >= 2 else None
        y = next((o for o in options if o != prev), options[0])
        walk.append(y)
        z = mate[y]
        if z in first_seen:
            return walk[first_seen[z]:]
        first_seen[z] = len(walk)
        walk.append(z)


# -- decision ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MPrimeCertificate:
    kind: str  # shift_automorphism | inducing_stable_set | explicit_model | negative_exhaustive
    witness: Optional[InducingWitness] = None
    model: Optional[MinorModel] = None
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.model is not None:
            out["branch_sets"] = {str(v): sorted(s) for v, s in enumerate(self.model.branch_sets)}
        if self.stats:
            out["stats"] = dict(self.stats)
        return out


@dataclass(frozen=True)
class MPrimeDecision:
    contractible: bool
    certificate: MPrimeCertificate

    def to_dict(self) -> dict:
        return {"mprime_contractible": self.contractible, "certificate": self.certificate.to_dict()}


def _decide(h: Graph, max_host: int, node_limit: Optional[int] = None) -> MPrimeDecision:
    stats: dict = {}
    wit = find_inducing_stable_set(h, cap=max(SHIFT_CAP, h.n), stats=stats)
    if wit is not None:
        kind = "shift_automorphism" if not wit.stable_set else "inducing_stable_set"
        return MPrimeDecision(True, MPrimeCertificate(kind, wit, build_induced_model(h, wit), stats))
    mp = build_mprime(h)
    search = SearchStats()
    model = find_rooted_minor(mp.graph, h, list(range(h.n)), cap=max_host, stats=search, node_limit=node_limit)
    stats["search_nodes"] = search.nodes
    stats["host_vertices"] = mp.graph.n
    if model is not None:
        return MPrimeDecision(True, MPrimeCertificate("explicit_model", None, model, stats))
    stats["exhaustive"] = True
    stats["triangle_free"] = not has_triangle(h)
    return MPrimeDecision(False, MPrimeCertificate("negative_exhaustive", None, None, stats))


@lru_cache(maxsize=8192)
def _decide_canonical(encoding: str, n: int, edges: frozenset, max_host: int, node_limit: Optional[int]) -> MPrimeDecision:
    return _decide(Graph(n, edges), max_host, node_limit)


def _pull_back(h: Graph, perm: tuple, dec: MPrimeDecision) -> MPrimeDecision:
    """Express a decision computed on ``h.relabel(perm)`` in the labels of ``h``."""
    n = h.n
    inv = [0] * n
    for v, p in enumerate(perm):
        inv[p] = v
    cert = dec.certificate
    wit = None
    model = None
    if cert.witness is not None:
        w = cert.witness
        wit = InducingWitness(
            tuple(sorted(inv[x] for x in w.stable_set)),
            tuple(sorted((inv[a], inv[b]) for a, b in w.matching)),
            tuple(sorted((inv[a], inv[b]) for a, b in w.shift)),
        )
        model = build_induced_model(h, wit)
    elif cert.model is not None:
        def back(x: int) -> int:
            return inv[x] if x < n else n + inv[x - n]

        sets = [{back(x) for x in cert.model.branch_sets[perm[v]]} for v in range(n)]
        model = MinorModel.build(h, build_mprime(h).graph, sets, list(range(n)))
    return MPrimeDecision(dec.contractible, MPrimeCertificate(cert.kind, wit, model, dict(cert.stats)))


def decide_mprime_contractible(
    h: Graph, max_host_vertices: int = MAX_HOST_VERTICES, node_limit: Optional[int] = None
) -> MPrimeDecision:
    """Does M'(H) contain a rooted H-minor at the first copies?

    Tries inducing stable sets first; if none works, runs the exhaustive rooted
    minor search on M'(H).  Results are cached by canonical form.  A
    ``node_limit`` bounds the exhaustive search (``CapacityError`` when hit).
    """
    if 2 * h.n > max_host_vertices:
        raise CapacityError(f"M'(H) has {2 * h.n} vertices, above the cap of {max_host_vertices}")
    if h.n <= CANON_CAP:
        cf = canonical_form(h)
        hc = h.relabel(cf.perm)
        dec = _decide_canonical(cf.encoding, hc.n, hc.edges, max_host_vertices, node_limit)
        return _pull_back(h, cf.perm, dec)
    return _decide(h, max_host_vertices, node_limit)


def verify_certificate(h: Graph, cert: MPrimeCertificate, max_host_vertices: int = MAX_HOST_VERTICES) -> list:
    """Problems with ``cert`` as a certificate about ``h`` (empty list when it checks out)."""
    problems = []
    mp = build_mprime(h)
    if cert.kind in ("shift_automorphism", "inducing_stable_set"):
        if cert.witness is None:
            return ["missing inducing witness"]
        problems += check_inducing_witness(h, cert.witness)
        if cert.kind == "shift_automorphism" and cert.witness.stable_set:
            problems.append("shift automorphism certificate must have S empty")
        if problems:
            return problems
        model = build_induced_model(h, cert.witness)
        if cert.model is not None and cert.model.branch_sets != model.branch_sets:
            problems.append("model does not match the induced construction")
        problems += [v.message for v in check_minor_model(model).violations]
    elif cert.kind == "explicit_model":
        if cert.model is None:
            return ["missing model"]
        m = cert.model
        if m.host != mp.graph or m.pattern != h or m.roots != tuple(range(h.n)):
            problems.append("model is not a rooted model of H in M'(H)")
        problems += [v.message for v in check_minor_model(m).violations]
    elif cert.kind == "negative_exhaustive":
        if find_inducing_stable_set(h, cap=max(SHIFT_CAP, h.n)) is not None:
            problems.append("an inducing stable set exists")
        if find_rooted_minor(mp.graph, h, list(range(h.n)), cap=max_host_vertices) is not None:
            problems.append("a rooted model exists")
    else:
        problems.append(f"unknown certificate kind {cert.kind!r}")
    return problems


def theta_mprime_verdict(sig) -> bool:
    """Closed form for theta graphs: not M'-contractible exactly when one
    parameter is odd and the built graph has no triangle."""
    g = sig.build()
    odd = sum(1 for p in sig.params if p % 2 == 1)
    return not (odd == 1 and not has_triangle(g))
