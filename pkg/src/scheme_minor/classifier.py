"""Rule-based verdicts on rooted contractibility.

Positive rule (checked first): every component has only K1/K2/K3 blocks
except for at most one special block, which may be K4, K_{1,1,2},
K_{1,1,3}, K_{2,3} or a cycle.  Forests and cacti with at most one cycle
longer than a triangle are reported under their own rule ids.

Negative rules, in reporting order:

====================  ==========================================================
THM_CHROMATIC          chromatic number at least 7
COR_TWO_ODD            two odd cycles of length >= 5 sharing <= 1 vertex, one component
THM_THETA_SUBGRAPH     a triangle-free theta subgraph with exactly one odd parameter
MPRIME_NEGATIVE        (deep) a connected subgraph H' with no rooted H'-minor in M'(H')
====================  ==========================================================

Anything else is Unknown.  Non-containment of a negative pattern is never
used as evidence; only subgraph closure and componentwise evaluation are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .canon import are_isomorphic
from .coloring import CHROMATIC_CAP, chromatic_number, dsatur_coloring
from .errors import CapacityError, InternalInvariantError
from .graph import (
    Graph,
    ThetaSignature,
    complete_graph,
    complete_multipartite,
    components_and_blocks,
    connected_components,
    is_connected,
)
from .minors import MAX_HOST_VERTICES
from .subgraph import subgraph_contains

CONTRACTIBLE = "Contractible"
NOT_CONTRACTIBLE = "NotContractible"
UNKNOWN = "Unknown"

CITATIONS = {
    "COR_FORESTS": "forests are rooted-contractible (pendant vertices can be stripped one at a time)",
    "COR_CACTUS": "a cactus with at most one cycle longer than a triangle is rooted-contractible",
    "COR_SUMMARY": "all blocks K1/K2/K3 except at most one per component from K4, K_{1,1,2}, K_{1,1,3}, K_{2,3}, any cycle",
    "THM_CHROMATIC": "rooted-contractible graphs are 6-colorable",
    "COR_TWO_ODD": "a component with two odd cycles of length >= 5 sharing at most one vertex is not rooted-contractible",
    "THM_THETA_SUBGRAPH": "a triangle-free theta with exactly one odd parameter is not M'-contractible; subgraphs inherit",
    "MPRIME_NEGATIVE": "a subgraph H' with no rooted H'-minor in M'(H'); M'-contractibility is necessary and subgraphs inherit",
}
NEGATIVE_ORDER = ("THM_CHROMATIC", "COR_TWO_ODD", "THM_THETA_SUBGRAPH", "MPRIME_NEGATIVE")
POSITIVE_RULES = ("COR_FORESTS", "COR_CACTUS", "COR_SUMMARY")
WEAK_NOTE = "WEAK_K5_K33: K5 and K_{3,3} are weakly contractible (unrooted minor guaranteed); rooted status is open"

CYCLE_CAP = 2000
DEEP_SUBGRAPH_CAP = 7
DEEP_NODE_LIMIT = 200_000

_SPECIAL_BLOCKS = {
    "K4": complete_graph(4),
    "K_{1,1,2}": complete_multipartite(1, 1, 2),
    "K_{1,1,3}": complete_multipartite(1, 1, 3),
    "K_{2,3}": complete_multipartite(2, 3),
}


@dataclass
class Verdict:
    status: str
    rule: Optional[str] = None
    citation: Optional[str] = None
    witness: Optional[dict] = None
    annotations: list = field(default_factory=list)
    partial: bool = False  # deep search hit a cap; the verdict is only as strong as fast mode

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "citation": self.citation,
            "witness": self.witness,
            "annotations": list(self.annotations),
            "partial": self.partial,
        }


# -- block pattern --------------------------------------------------------------------

def block_kind(g: Graph, block) -> str:
    """Name of a block: K1, K2, K3, one of the special graphs, C<n>, or 'other'."""
    sub, _ = g.induced_subgraph(block)
    if sub.n <= 3 and sub.m == sub.n * (sub.n - 1) // 2:
        return f"K{sub.n}"
    if sub.n >= 4 and sub.m == sub.n and all(sub.degree(v) == 2 for v in sub.vertices):
        return f"C{sub.n}"
    for name, pattern in _SPECIAL_BLOCKS.items():
        if are_isomorphic(sub, pattern):
            return name
    return "other"


def block_pattern(g: Graph) -> Optional[dict]:
    """Per-component block kinds when the positive block pattern holds, else None."""
    _, dec = components_and_blocks(g)
    by_comp = []
    for comp in connected_components(g):
        cs = set(comp)
        kinds = [block_kind(g, b) for b in dec.blocks if set(b) <= cs]
        special = [k for k in kinds if k not in ("K1", "K2", "K3")]
        if len(special) > 1 or "other" in special:
            return None
        by_comp.append({"vertices": comp, "blocks": [list(b) for b in dec.blocks if set(b) <= cs], "kinds": kinds})
    return {"components": by_comp}


def _positive_rule(pattern: dict) -> str:
    kinds = [k for c in pattern["components"] for k in c["kinds"]]
    if all(k in ("K1", "K2") for k in kinds):
        return "COR_FORESTS"
    if all(k in ("K1", "K2", "K3") or k.startswith("C") for k in kinds):
        return "COR_CACTUS"
    return "COR_SUMMARY"


# -- negative detectors -------------------------------------------------------------------

def bad_theta_signatures(max_vertices: int) -> list:
    """Theta signatures with exactly one odd parameter and no triangle, smallest first."""
    out = []
    for total in range(max_vertices - 1):
        for k in range(total + 1):
            for l in range(k, total - k + 1):
                m = total - k - l
                if m < l or (k == 0 and l == 0):
                    continue
                if sum(p % 2 for p in (k, l, m)) != 1:
                    continue
                if k == 0 and l == 1:
                    continue  # the 0-path and 1-path close a triangle
                out.append(ThetaSignature(k, l, m))
    return out


def detect_bad_theta(h: Graph, max_vertices: Optional[int] = None) -> Optional[dict]:
    """Smallest bad theta subgraph of ``h`` with its embedding, or None.

    A theta is 2-connected, so each block is searched on its own.  Thetas are
    tried by vertex count, then parameters; ``max_vertices`` (default: block
    size) bounds the theta size, and the search is exhaustive up to it.
    """
    best = None
    for block in _blocks(h):
        limit = len(block) if max_vertices is None else min(max_vertices, len(block))
        if limit < 7:
            continue
        sub, back = h.induced_subgraph(block)
        if sub.m <= sub.n:
            continue  # a single cycle
        for sig in bad_theta_signatures(limit):
            if best is not None and (sig.n, sig.params) >= (best[0].n, best[0].params):
                break
            t = sig.build()
            if t.m > sub.m:
                continue
            emb = subgraph_contains(sub, t)
            if emb is not None:
                best = (sig, [back[x] for x in emb], t)
                break
    if best is None:
        return None
    sig, emb, t = best
    edges = sorted(tuple(sorted((emb[a], emb[b]))) for a, b in t.sorted_edges)
    return {"signature": list(sig.params), "embedding": emb, "edges": [list(e) for e in edges]}


def _blocks(g: Graph) -> list:
    _, dec = components_and_blocks(g)
    return [list(b) for b in dec.blocks if len(b) >= 3]


def simple_cycles(g: Graph, cap: int = CYCLE_CAP) -> list:
    """Every simple cycle (as a vertex list starting at its least vertex, second
    vertex smaller than last).  Raises ``CapacityError`` past ``cap`` cycles."""
    cycles = []
    masks = g.masks
    for s in range(g.n):
        allowed = ~((1 << (s + 1)) - 1)
        path = [s]

        def dfs(v: int, used: int) -> None:
            for w in sorted(g.adj[v]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(list(path))
                    if len(cycles) > cap:
                        raise CapacityError(f"more than {cap} cycles; raise the cycle cap")
                elif (allowed >> w) & 1 and not (used >> w) & 1:
                    path.append(w)
                    dfs(w, used | 1 << w)
                    path.pop()

        if masks[s] & allowed:
            dfs(s, 1 << s)
    return cycles


def detect_two_long_odd(h: Graph, cycle_cap: int = CYCLE_CAP) -> Optional[tuple]:
    """Two odd cycles of length >= 5 in one component sharing at most one vertex.

    Returns the first such pair in (length, vertex list) order, or None.
    Cycles are enumerated block by block; ``CapacityError`` past ``cycle_cap``
    cycles means the answer is unknown.
    """
    if h.n < 9:
        return None
    long_odd = []
    remaining = cycle_cap
    for block in _blocks(h):
        sub, back = h.induced_subgraph(block)
        found = simple_cycles(sub, remaining)
        remaining -= len(found)
        long_odd += [_rotate([back[x] for x in c]) for c in found if len(c) >= 5 and len(c) % 2 == 1]
    long_odd.sort(key=lambda c: (len(c), c))
    comp_of = {}
    for i, comp in enumerate(connected_components(h)):
        for v in comp:
            comp_of[v] = i
    bits = [sum(1 << v for v in c) for c in long_odd]
    for i in range(len(long_odd)):
        for j in range(i + 1, len(long_odd)):
            if comp_of[long_odd[i][0]] == comp_of[long_odd[j][0]] and bin(bits[i] & bits[j]).count("1") <= 1:
                return long_odd[i], long_odd[j]
    return None


def _rotate(c: list) -> list:
    """Start a cycle at its least vertex, heading to the smaller neighbour."""
    i = c.index(min(c))
    c = c[i:] + c[:i]
    return c if c[1] < c[-1] else [c[0]] + c[:0:-1]


def _deep_mprime(h: Graph, max_host: int, node_limit: int, annotations: list) -> tuple:
    """First connected subgraph (small to large) that is not M'-contractible.

    Returns ``(witness or None, partial)``.
    """
    from .graphio import to_graph6
    from .mprime import decide_mprime_contractible
    from .smallgraphs import connected_graphs_up_to

    partial = False
    cap = min(DEEP_SUBGRAPH_CAP, h.n)
    for sub in connected_graphs_up_to(cap):
        if sub.m > h.m or sub.m < sub.n + 1:
            continue  # forests and unicyclic graphs are contractible
        if 2 * sub.n > max_host:
            partial = True
            break
        emb = subgraph_contains(h, sub)
        if emb is None:
            continue
        try:
            dec = decide_mprime_contractible(sub, max_host, node_limit)
        except CapacityError:
            partial = True
            annotations.append(f"MPRIME_BUDGET: subgraph {to_graph6(sub)} exceeded the search budget")
            continue
        if not dec.contractible:
            return {"subgraph": to_graph6(sub), "embedding": emb, "certificate": dec.certificate.to_dict()}, partial
    if h.n > DEEP_SUBGRAPH_CAP:
        # the whole graph is still worth a direct attempt when it fits
        if 2 * h.n <= max_host and is_connected(h):
            try:
                dec = decide_mprime_contractible(h, max_host, node_limit)
                if not dec.contractible:
                    return {"subgraph": "whole graph", "embedding": list(range(h.n)),
                            "certificate": dec.certificate.to_dict()}, partial
            except CapacityError:
                annotations.append("MPRIME_BUDGET: whole graph exceeded the search budget")
        partial = True
    return None, partial


# -- classify -------------------------------------------------------------------------------

def negative_firings(h: Graph, cycle_cap: int = CYCLE_CAP, annotations: Optional[list] = None) -> list:
    """Fast negative rules that fire, as ``(rule, witness)`` in reporting order."""
    notes = annotations if annotations is not None else []
    fired = []
    try:
        chi = chromatic_number(h)
        if chi >= 7:
            fired.append(("THM_CHROMATIC", {"chromatic_number": chi}))
    except CapacityError:
        if max(dsatur_coloring(h), default=-1) + 1 >= 7:
            notes.append(f"THM_CHROMATIC: exact chromatic number skipped above {CHROMATIC_CAP} vertices")
    try:
        pair = detect_two_long_odd(h, cycle_cap)
        if pair is not None:
            fired.append(("COR_TWO_ODD", {"cycles": [pair[0], pair[1]]}))
    except CapacityError:
        notes.append(f"COR_TWO_ODD: indeterminate, more than {cycle_cap} cycles")
    theta = detect_bad_theta(h)
    if theta is not None:
        fired.append(("THM_THETA_SUBGRAPH", theta))
    return fired


def classify(
    h: Graph,
    effort: str = "fast",
    max_host_vertices: int = MAX_HOST_VERTICES,
    cycle_cap: int = CYCLE_CAP,
    node_limit: int = DEEP_NODE_LIMIT,
) -> Verdict:
    if effort not in ("fast", "deep"):
        raise ValueError("effort must be 'fast' or 'deep'")
    annotations: list = []
    if any(are_isomorphic(h, pattern) for pattern in (complete_graph(5), complete_multipartite(3, 3))):
        annotations.append(WEAK_NOTE)

    pattern = block_pattern(h)
    if pattern is not None:
        rule = _positive_rule(pattern)
        # both polarities firing would mean a broken rule implementation
        clash = negative_firings(h, cycle_cap, [])
        if clash:
            raise InternalInvariantError(f"{rule} and {clash[0][0]} both fire")
        return Verdict(CONTRACTIBLE, rule, CITATIONS[rule], pattern, annotations)

    fired = negative_firings(h, cycle_cap, annotations)
    if fired:
        rule, wit = fired[0]
        return Verdict(NOT_CONTRACTIBLE, rule, CITATIONS[rule], wit, annotations)

    if effort == "deep":
        wit, partial = _deep_mprime(h, max_host_vertices, node_limit, annotations)
        if wit is not None:
            return Verdict(NOT_CONTRACTIBLE, "MPRIME_NEGATIVE", CITATIONS["MPRIME_NEGATIVE"], wit, annotations)
        return Verdict(UNKNOWN, None, None, None, annotations, partial)
    return Verdict(UNKNOWN, None, None, None, annotations)


def theta_witness_graph(witness: dict) -> Graph:
    """The theta subgraph of a THM_THETA_SUBGRAPH witness, relabeled 0..k-1."""
    verts = sorted({v for e in witness["edges"] for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    return Graph.from_edges(len(verts), [(idx[a], idx[b]) for a, b in witness["edges"]])


__all__ = [
    "CONTRACTIBLE",
    "NOT_CONTRACTIBLE",
    "UNKNOWN",
    "CITATIONS",
    "Verdict",
    "block_kind",
    "block_pattern",
    "bad_theta_signatures",
    "detect_bad_theta",
    "simple_cycles",
    "detect_two_long_odd",
    "negative_firings",
    "classify",
    "theta_witness_graph",
]
