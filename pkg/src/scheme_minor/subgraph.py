"""Ordinary (not induced) subgraph containment by backtracking."""

from __future__ import annotations

from typing import Optional

from .graph import Graph


def subgraph_contains(g: Graph, h: Graph) -> Optional[list]:
    """Edge-preserving injection ``V(h) -> V(g)`` as a list, or None.

    Pattern vertices are placed in ascending order and host candidates tried in
    ascending order, so the witness is the lexicographically least one.
    """
    if h.n > g.n or h.m > g.m:
        return None
    gm = g.masks
    gdeg = [g.degree(v) for v in range(g.n)]
    hdeg = [h.degree(v) for v in range(h.n)]
    # earlier pattern neighbours of each pattern vertex
    back = [[u for u in h.adj[v] if u < v] for v in range(h.n)]
    image = [-1] * h.n
    used = 0

    def place(v: int) -> bool:
        nonlocal used
        if v == h.n:
            return True
        for w in range(g.n):
            if (used >> w) & 1 or gdeg[w] < hdeg[v]:
                continue
            if all((gm[image[u]] >> w) & 1 for u in back[v]):
                image[v] = w
                used |= 1 << w
                if place(v + 1):
                    return True
                used &= ~(1 << w)
        image[v] = -1
        return False

    if place(0):
        return list(image)
    return None
