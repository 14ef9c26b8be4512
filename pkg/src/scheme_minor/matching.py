"""Maximum matching between two disjoint vertex sets (augmenting paths)."""

from __future__ import annotations

from typing import Iterable

from .errors import PreconditionError
from .graph import Graph, norm_edge


def bipartite_matching(g: Graph, a: Iterable[int], b: Iterable[int]) -> list:
    """Maximum matching using only edges between ``a`` and ``b``.

    Returned as a sorted list of edges ``(x, y)`` with ``x`` in ``a``.  Vertices
    are scanned in ascending order so the result is deterministic.
    """
    left = sorted(set(a))
    right = set(b)
    if right & set(left):
        raise PreconditionError("matching sides must be disjoint")
    nbrs = {x: sorted(w for w in g.adj[x] if w in right) for x in left}
    mate_r: dict = {}

    def augment(x: int, seen: set) -> bool:
        for y in nbrs[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in mate_r or augment(mate_r[y], seen):
                mate_r[y] = x
                return True
        return False

    for x in left:
        augment(x, set())
    return sorted((x, y) for y, x in mate_r.items())


def is_matching(g: Graph, edges: Iterable) -> bool:
    seen = set()
    for e in edges:
        u, v = e
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def matched_vertices(edges: Iterable) -> set:
    return {v for e in edges for v in e}


def as_edge_set(edges: Iterable) -> set:
    return {norm_edge(*e) for e in edges}
