"""Canonical forms for small graphs.

The canonical form is the lexicographically least graph6 bit string over all
vertex orderings that respect a canonical ordered partition (iterated degree
refinement).  The refinement is label-independent, so two graphs get equal
forms exactly when they are isomorphic.  Exhaustive, hence the vertex cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError
from .graph import Graph
from .graphio import to_graph6

CANON_CAP = 8


@dataclass(frozen=True)
class CanonicalForm:
    encoding: str  # graph6 of the relabeled graph
    perm: tuple  # perm[v] = canonical position of vertex v

    def graph(self, g: Graph) -> Graph:
        return g.relabel(self.perm)


def refine_partition(g: Graph) -> list:
    """Ordered cells of the coarsest equitable refinement of the degree partition."""
    color = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [(color[v], tuple(sorted(color[w] for w in g.adj[v]))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells = {}
    for v in range(g.n):
        cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph, cap: int = CANON_CAP) -> CanonicalForm:
    if g.n > cap:
        raise CapacityError(f"canonical form is exhaustive; n={g.n} exceeds cap {cap}")
    return _canonical(g.n, g.edges)


@lru_cache(maxsize=65536)
def _canonical(n: int, edges: frozenset) -> CanonicalForm:
    g = Graph(n, edges)
    if n == 0:
        return CanonicalForm(to_graph6(g), ())
    masks = g.masks
    cells = refine_partition(g)
    slots = []  # cell index for each position
    for ci, cell in enumerate(cells):
        slots.extend([ci] * len(cell))
    remaining = [list(c) for c in cells]

    best_cols: list = []
    best_order: list = []
    order: list = []
    cols: list = []

    def twin(a: int, b: int) -> bool:
        return (masks[a] & ~(1 << b)) == (masks[b] & ~(1 << a))

    def search(pos: int) -> None:
        nonlocal best_cols, best_order
        if pos == n:
            if not best_order or cols < best_cols:
                best_cols = list(cols)
                best_order = list(order)
            return
        cell = remaining[slots[pos]]
        tried = []
        for idx in range(len(cell)):
            v = cell[idx]
            if any(twin(v, t) for t in tried):
                continue
            tried.append(v)
            col = 0
            for i, u in enumerate(order):
                if (masks[u] >> v) & 1:
                    col |= 1 << (pos - 1 - i)
            cols.append(col)
            if best_order and cols > best_cols[: pos + 1]:
                cols.pop()
                continue
            order.append(v)
            cell.pop(idx)
            search(pos + 1)
            cell.insert(idx, v)
            order.pop()
            cols.pop()

    search(0)
    perm = [0] * n
    for position, v in enumerate(best_order):
        perm[v] = position
    return CanonicalForm(to_graph6(g.relabel(perm)), tuple(perm))


def canonical_graph(g: Graph, cap: int = CANON_CAP) -> Graph:
    cf = canonical_form(g, cap)
    return cf.graph(g)


def are_isomorphic(a: Graph, b: Graph, cap: int = CANON_CAP) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(a.degree(v) for v in a.vertices) != sorted(b.degree(v) for v in b.vertices):
        return False
    return canonical_form(a, cap).encoding == canonical_form(b, cap).encoding


def automorphisms(g: Graph):
    """Yield every automorphism as a tuple ``p`` with ``p[v]`` the image of ``v``.

    Plain backtracking with degree pruning; intended for small graphs.
    """
    n = g.n
    masks = g.masks
    deg = [g.degree(v) for v in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(v: int):
        if v == n:
            yield tuple(image)
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if ((masks[u] >> v) & 1) != ((masks[image[u]] >> w) & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            yield from extend(v + 1)
            used[w] = False
        image[v] = -1

    yield from extend(0)
