"""Minor models and exhaustive (rooted) minor search.

A model assigns every host vertex to one pattern vertex's branch set or leaves
it unused.  The search fixes roots, then decides host vertices in ascending
order, trying branch sets in ascending pattern order and "unused" last, so the
first model found is the lexicographically least assignment.  Pruning keeps
only states where every partial branch set can still be connected through
undecided vertices and every pattern edge can still be realized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .canon import canonical_form
from .errors import CapacityError, PreconditionError
from .graph import Graph, iter_bits, mask_component
from .report import ValidationReport

MAX_HOST_VERTICES = 20


@dataclass(frozen=True)
class MinorModel:
    pattern: Graph
    host: Graph
    branch_sets: tuple  # branch_sets[v] is a frozenset of host vertices
    roots: Optional[tuple] = None  # roots[v] is a host vertex

    @classmethod
    def build(cls, pattern: Graph, host: Graph, branch_sets, roots=None) -> "MinorModel":
        if isinstance(branch_sets, Mapping):
            branch_sets = [branch_sets[v] for v in range(pattern.n)]
        if isinstance(roots, Mapping):
            roots = [roots[v] for v in range(pattern.n)]
        return cls(pattern, host, tuple(frozenset(s) for s in branch_sets), None if roots is None else tuple(roots))

    def to_dict(self) -> dict:
        from .graphio import graph_to_dict

        out = {
            "pattern": graph_to_dict(self.pattern),
            "host": graph_to_dict(self.host),
            "branch_sets": {str(v): sorted(s) for v, s in enumerate(self.branch_sets)},
        }
        if self.roots is not None:
            out["roots"] = {str(v): r for v, r in enumerate(self.roots)}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MinorModel":
        from .graphio import graph_from_dict

        pattern = graph_from_dict(data["pattern"])
        host = graph_from_dict(data["host"])
        bs = [data["branch_sets"][str(v)] for v in range(pattern.n)]
        roots = None
        if data.get("roots") is not None:
            roots = [data["roots"][str(v)] for v in range(pattern.n)]
        return cls.build(pattern, host, bs, roots)


def check_minor_model(m: MinorModel) -> ValidationReport:
    rep = ValidationReport()
    h, g = m.pattern, m.host
    if len(m.branch_sets) != h.n:
        rep.add("branch_sets", f"expected {h.n} branch sets, got {len(m.branch_sets)}")
        return rep
    owner: dict = {}
    for v, bs in enumerate(m.branch_sets):
        if not bs:
            rep.add("nonempty", f"branch set of {v} is empty", v)
            continue
        bad = [x for x in bs if not 0 <= x < g.n]
        if bad:
            rep.add("in_host", f"branch set of {v} has vertices outside the host", bad)
            continue
        for x in sorted(bs):
            if x in owner:
                rep.add("disjoint", f"host vertex {x} lies in the branch sets of {owner[x]} and {v}", [owner[x], v, x])
            else:
                owner[x] = v
        mask = 0
        for x in bs:
            mask |= 1 << x
        if mask_component(g, min(bs), mask) != mask:
            rep.add("connected", f"branch set of {v} does not induce a connected subgraph", v)
    if rep.violations:
        return rep
    for u, v in h.sorted_edges:
        if not any(g.adj[x] & m.branch_sets[v] for x in m.branch_sets[u]):
            rep.add("edge", f"no host edge joins the branch sets of {u} and {v}", [u, v])
    if m.roots is not None:
        if len(m.roots) != h.n:
            rep.add("rooted", "root map does not cover every pattern vertex")
        else:
            for v, r in enumerate(m.roots):
                if r not in m.branch_sets[v]:
                    rep.add("rooted", f"root {r} of pattern vertex {v} is not in its branch set", [v, r])
    return rep


@dataclass
class SearchStats:
    nodes: int = 0
    exhaustive: bool = True

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "exhaustive": self.exhaustive}


class _ModelSearch:
    def __init__(self, g: Graph, h: Graph, roots: Optional[Sequence[int]], twins_break: bool,
                 node_limit: Optional[int] = None):
        self.g = g
        self.node_limit = node_limit
        self.h = h
        self.k = h.n
        self.roots = roots
        self.masks = g.masks
        self.hedges = h.sorted_edges
        self.inc = [[i for i, (a, b) in enumerate(self.hedges) if v in (a, b)] for v in range(h.n)]
        self.stats = SearchStats()
        self.twin_prev: list = [[] for _ in range(h.n)]
        if twins_break:
            hm = h.masks
            for v in range(h.n):
                for u in range(v):
                    if (hm[u] & ~(1 << v)) == (hm[v] & ~(1 << u)):
                        self.twin_prev[v].append(u)

    def _nbhd(self, mask: int) -> int:
        masks = self.masks
        out = 0
        for x in iter_bits(mask):
            out |= masks[x]
        return out

    def _reach(self, v: int, a_mask: int, free: int) -> int:
        if self.roots is not None:
            return mask_component(self.g, self.roots[v], a_mask | free)
        if a_mask == 0:
            return free
        low = (a_mask & -a_mask).bit_length() - 1
        return mask_component(self.g, low, a_mask | free)

    def _edges_ok(self, labels, A, R, NR) -> bool:
        hedges = self.hedges
        idxs = set()
        for v in labels:
            idxs.update(self.inc[v])
        for i in sorted(idxs):
            a, b = hedges[i]
            if NR[a] & R[b] == 0:
                return False
        return True

    def run(self) -> Optional[list]:
        g, k = self.g, self.k
        A = [0] * k
        assign = [-1] * g.n
        free = (1 << g.n) - 1
        if self.roots is not None:
            for v, r in enumerate(self.roots):
                A[v] |= 1 << r
                assign[r] = v
                free &= ~(1 << r)
        order = [x for x in range(g.n) if assign[x] == -1]
        R = [self._reach(v, A[v], free) for v in range(k)]
        if any(A[v] & ~R[v] for v in range(k)):
            return None
        NR = [self._nbhd(R[v]) for v in range(k)]
        if not self._edges_ok(range(k), A, R, NR):
            return None
        if self.roots is None and k > len(order):
            return None
        if self._dfs(0, order, assign, A, free, R, NR):
            return [frozenset(iter_bits(a)) for a in A]
        return None

    def _dfs(self, depth, order, assign, A, free, R, NR) -> bool:
        self.stats.nodes += 1
        if self.node_limit is not None and self.stats.nodes > self.node_limit:
            raise CapacityError(f"minor search exceeded its budget of {self.node_limit} nodes")
        if depth == len(order):
            return all(A)  # connectivity and edges already enforced by pruning
        x = order[depth]
        bit = 1 << x
        k = self.k
        rooted = self.roots is not None
        nfree = free & ~bit
        for c in range(k + 1):
            if c < k:
                if not R[c] & bit:
                    continue
                if not rooted and A[c] == 0 and any(A[u] == 0 for u in self.twin_prev[c]):
                    continue
            A2 = A
            if c < k:
                A2 = list(A)
                A2[c] |= bit
            changed = [v for v in range(k) if R[v] & bit and not (rooted and v == c)]
            R2 = list(R)
            NR2 = list(NR)
            ok = True
            for v in changed:
                r = self._reach(v, A2[v], nfree)
                if A2[v] & ~r:
                    ok = False
                    break
                R2[v] = r
                NR2[v] = self._nbhd(r)
            if not ok:
                continue
            if not rooted:
                empty = sum(1 for a in A2 if a == 0)
                if empty > len(order) - depth - 1:
                    continue
            if not self._edges_ok(changed, A2, R2, NR2):
                continue
            assign[x] = c
            if self._dfs(depth + 1, order, assign, A2, nfree, R2, NR2):
                A[:] = A2
                return True
            assign[x] = -1
        return False


def _check_caps(g: Graph, h: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapacityError(f"exhaustive minor search capped at {cap} host vertices, got {g.n}")
    if g.n > 60:
        raise CapacityError("bitmask search supports at most 60 host vertices")


def find_rooted_minor(
    g: Graph,
    h: Graph,
    roots: Sequence[int],
    cap: int = MAX_HOST_VERTICES,
    stats: Optional[SearchStats] = None,
    node_limit: Optional[int] = None,
) -> Optional[MinorModel]:
    """Lexicographically least rooted ``h``-model in ``g`` with ``roots[v]`` in branch set ``v``.

    ``None`` is a proof of non-existence: the search is exhaustive.  With
    ``node_limit`` set, running out of budget raises ``CapacityError``.
    """
    _check_caps(g, h, cap)
    if isinstance(roots, Mapping):
        roots = [roots[v] for v in range(h.n)]
    roots = list(roots)
    if len(roots) != h.n:
        raise PreconditionError("roots must assign a host vertex to every pattern vertex")
    if len(set(roots)) != len(roots) or any(not 0 <= r < g.n for r in roots):
        raise PreconditionError("roots must be an injection into the host vertices")
    search = _ModelSearch(g, h, roots, twins_break=False, node_limit=node_limit)
    try:
        found = search.run()
    finally:
        if stats is not None:
            stats.nodes += search.stats.nodes
    if found is None:
        return None
    return MinorModel(h, g, tuple(found), tuple(roots))


def find_minor(
    g: Graph,
    h: Graph,
    cap: int = MAX_HOST_VERTICES,
    stats: Optional[SearchStats] = None,
    node_limit: Optional[int] = None,
) -> Optional[MinorModel]:
    """Unrooted exhaustive minor search.

    The pattern is canonically relabeled first; interchangeable (twin) pattern
    vertices are ordered by their smallest host vertex to skip symmetric work.
    The returned model is expressed in the caller's pattern labels.
    """
    _check_caps(g, h, cap)
    if h.n > g.n or h.m > g.m:
        return None
    if h.n <= 8:
        perm = canonical_form(h).perm
    else:
        perm = tuple(range(h.n))
    hc = h.relabel(perm)
    search = _ModelSearch(g, hc, None, twins_break=True, node_limit=node_limit)
    try:
        found = search.run()
    finally:
        if stats is not None:
            stats.nodes += search.stats.nodes
    if found is None:
        return None
    return MinorModel(h, g, tuple(found[perm[v]] for v in range(h.n)), None)

