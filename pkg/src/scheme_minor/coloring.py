"""Exact chromatic number by branch and bound.

Upper bound from greedy DSATUR, lower bound from a greedy clique; the gap is
closed by exact k-colorability backtracking (DSATUR branching order).
"""

from __future__ import annotations

from typing import Optional

from .errors import CapacityError
from .graph import Graph, iter_bits

CHROMATIC_CAP = 40


def greedy_clique(g: Graph) -> list:
    best: list = []
    masks = g.masks
    for start in range(g.n):
        clique = [start]
        cand = masks[start]
        while cand:
            v = max(iter_bits(cand), key=lambda x: (bin(masks[x] & cand).count("1"), -x))
            clique.append(v)
            cand &= masks[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def dsatur_coloring(g: Graph) -> list:
    color = [-1] * g.n
    for _ in range(g.n):
        best, key = -1, None
        for v in range(g.n):
            if color[v] != -1:
                continue
            sat = len({color[w] for w in g.adj[v] if color[w] != -1})
            k = (sat, g.degree(v), -v)
            if key is None or k > key:
                best, key = v, k
        used = {color[w] for w in g.adj[best]}
        c = 0
        while c in used:
            c += 1
        color[best] = c
    return color


def k_coloring(g: Graph, k: int) -> Optional[list]:
    """A proper coloring with colors 0..k-1, or None. Deterministic."""
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    masks = g.masks
    color = [-1] * n
    # forbidden[v] is a bitmask over colors used by colored neighbours
    forbidden = [0] * n
    full = (1 << k) - 1

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] != -1:
                continue
            sat = bin(forbidden[v]).count("1")
            kk = (sat, len(g.adj[v]), -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def solve(colored: int, max_used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        avail = full & ~forbidden[v]
        # symmetry: a fresh color is interchangeable with any other fresh color
        for c in range(min(k, max_used + 2)):
            if not (avail >> c) & 1:
                continue
            color[v] = c
            touched = []
            for w in iter_bits(masks[v]):
                if color[w] == -1 and not (forbidden[w] >> c) & 1:
                    forbidden[w] |= 1 << c
                    touched.append(w)
            dead = any((forbidden[w] & full) == full for w in touched)
            if not dead and solve(colored + 1, max(max_used, c)):
                return True
            for w in touched:
                forbidden[w] &= ~(1 << c)
            color[v] = -1
        return False

    if solve(0, -1):
        return list(color)
    return None


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    if g.n > cap:
        raise CapacityError(f"exact chromatic number capped at n={cap}, got n={g.n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    upper = max(dsatur_coloring(g)) + 1
    lower = len(greedy_clique(g))
    for k in range(lower, upper):
        if k_coloring(g, k) is not None:
            return k
    return upper
