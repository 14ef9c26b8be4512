"""Connected graphs on few vertices, one per isomorphism class.

Every connected graph on n >= 2 vertices has a vertex whose removal leaves it
connected (a leaf of a spanning tree), so attaching a new vertex to every
class on n - 1 vertices by every non-empty neighbour set reaches every class.
Duplicates are removed by canonical form.
"""

from __future__ import annotations

from functools import lru_cache

from .canon import canonical_form
from .errors import CapacityError
from .graph import Graph

ENUMERATION_CAP = 7


def enumerate_connected_graphs(n: int) -> list:
    """Canonical representatives of the connected n-vertex graphs, sorted by graph6."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > ENUMERATION_CAP:
        raise CapacityError(f"enumeration supports n <= {ENUMERATION_CAP}, got {n}")
    return list(_connected(n))


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple:
    if n == 0:
        return ()
    if n == 1:
        return (Graph(1, frozenset()),)
    found: dict = {}
    new = n - 1
    for base in _connected(n - 1):
        for subset in range(1, 1 << new):
            edges = set(base.edges)
            edges.update((v, new) for v in range(new) if subset >> v & 1)
            g = Graph(n, frozenset(edges))
            cf = canonical_form(g)
            if cf.encoding not in found:
                found[cf.encoding] = cf.graph(g)
    return tuple(found[k] for k in sorted(found))


def connected_graphs_up_to(n_max: int) -> list:
    """All classes with 1..n_max vertices, ordered by vertex count then graph6."""
    out = []
    for n in range(1, n_max + 1):
        out.extend(enumerate_connected_graphs(n))
    return out
