"""Simple undirected graphs on dense integer vertices and structural primitives.

Vertices are always ``0..n-1``.  Edges are stored once each as ``(u, v)`` with
``u < v``.  Graphs are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GraphValidationError, PreconditionError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    labels: Optional[Mapping[int, str]] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphValidationError(f"negative vertex count {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            normalized.add(norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None, strict: bool = False) -> "Graph":
        """Build a graph; with ``strict`` a repeated edge is an error rather than merged."""
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphValidationError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            key = norm_edge(u, v)
            if strict and key in seen:
                raise GraphValidationError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen), labels)

    # -- cached views -------------------------------------------------------

    @cached_property
    def adj(self) -> tuple:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple:
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (self.masks[u] >> v) & 1 == 1

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"

    # -- derived graphs -----------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, frozenset(norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph plus the list mapping new vertex -> old vertex."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> tuple["Graph", list]:
        """Subgraph formed by the given edges and their endpoints."""
        es = [norm_edge(*e) for e in edges]
        for e in es:
            if e not in self.edges:
                raise PreconditionError(f"{e} is not an edge")
        keep = sorted({v for e in es for v in e})
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(len(keep), [(index[u], index[v]) for u, v in es]), keep

    def remove_vertices(self, vertices: Iterable[int]) -> tuple["Graph", list]:
        gone = set(vertices)
        return self.induced_subgraph(v for v in range(self.n) if v not in gone)

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        gone = {norm_edge(*e) for e in edges}
        return Graph(self.n, self.edges - gone)

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.edges | {norm_edge(*e) for e in edges})

    def complement(self) -> "Graph":
        return Graph(self.n, frozenset(combinations(range(self.n), 2)) - self.edges)


# -- constructors --------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def complete_multipartite(*sizes: int) -> Graph:
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def theta_graph(k: int, l: int, m: int) -> Graph:
    """Two branch vertices 0 and 1 joined by paths with k, l, m internal vertices."""
    if [k, l, m].count(0) > 1 or min(k, l, m) < 0:
        raise PreconditionError("theta parameters must be non-negative with at most one zero")
    edges = []
    nxt = 2
    for length in (k, l, m):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def glue_at_vertex(a: Graph, va: int, b: Graph, vb: int) -> Graph:
    """Identify vertex ``va`` of ``a`` with vertex ``vb`` of ``b``."""
    index = {}
    nxt = a.n
    for v in range(b.n):
        if v == vb:
            index[v] = va
        else:
            index[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(index[u], index[v]) for u, v in b.edges]
    return Graph.from_edges(nxt, edges)


# -- contraction -----------------------------------------------------------------

def contract_edge(g: Graph, uv: Sequence[int]) -> tuple[Graph, list]:
    """Contract edge ``uv``; parallels merge and the loop disappears.

    The merged vertex takes the smaller endpoint's place; vertices above the
    larger endpoint shift down by one.  Returns ``(graph, mapping)`` where
    ``mapping[old] = new``.
    """
    u, v = norm_edge(*uv)
    if not g.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    mapping = []
    for x in range(g.n):
        if x == v:
            mapping.append(u if u < v else u - 1)
        elif x < v:
            mapping.append(x)
        else:
            mapping.append(x - 1)
    edges = set()
    for a, b in g.edges:
        ma, mb = mapping[a], mapping[b]
        if ma != mb:
            edges.add(norm_edge(ma, mb))
    return Graph(g.n - 1, frozenset(edges)), mapping


def quotient(g: Graph, groups: Iterable[Iterable[int]]) -> tuple[Graph, list]:
    """Contract each group (assumed to induce a connected subgraph) to one vertex.

    Vertices not mentioned stay as singletons.  New vertices are numbered by the
    smallest old vertex of their class.  Returns ``(graph, mapping)``.
    """
    rep = list(range(g.n))
    for grp in groups:
        grp = sorted(set(grp))
        if not grp:
            continue
        r = min(rep[x] for x in grp)
        for x in grp:
            rep[x] = r
    # resolve chains (a vertex may appear in two groups)
    changed = True
    while changed:
        changed = False
        for x in range(g.n):
            if rep[rep[x]] != rep[x]:
                rep[x] = rep[rep[x]]
                changed = True
    reps = sorted(set(rep))
    index = {r: i for i, r in enumerate(reps)}
    mapping = [index[rep[x]] for x in range(g.n)]
    edges = {norm_edge(mapping[a], mapping[b]) for a, b in g.edges if mapping[a] != mapping[b]}
    return Graph(len(reps), frozenset(edges)), mapping


# -- connectivity, blocks ----------------------------------------------------------

def mask_component(g: Graph, start: int, allowed: int) -> int:
    """Bitmask of the component of ``start`` inside the vertex set ``allowed``."""
    masks = g.masks
    reach = 1 << start
    frontier = reach
    while frontier:
        nb = 0
        for x in iter_bits(frontier):
            nb |= masks[x]
        frontier = nb & allowed & ~reach
        reach |= frontier
    return reach


def is_connected_set(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    if not vs:
        return False
    allowed = 0
    for v in vs:
        allowed |= 1 << v
    return mask_component(g, vs[0], allowed) == allowed


def connected_components(g: Graph) -> list:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    full = (1 << g.n) - 1
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = mask_component(g, v, full)
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple  # tuple of sorted vertex tuples
    cut_vertices: frozenset

    def block_edges(self, g: Graph) -> list:
        out = []
        for b in self.blocks:
            s = set(b)
            out.append(sorted(e for e in g.edges if e[0] in s and e[1] in s))
        return out


def components_and_blocks(g: Graph) -> tuple[list, BlockDecomposition]:
    """Connected components and biconnected blocks (isolated vertices are K1 blocks)."""
    comps = connected_components(g)
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    blocks = []
    cuts = set()
    for root in range(g.n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            blocks.append((root,))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack = []
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    if p != root:
                        cuts.add(p)
                    verts = set()
                    while True:
                        a, b = edge_stack.pop()
                        verts.add(a)
                        verts.add(b)
                        if (a, b) == (p, v):
                            break
                    blocks.append(tuple(sorted(verts)))
        if root_children > 1:
            cuts.add(root)
    blocks.sort()
    return comps, BlockDecomposition(tuple(blocks), frozenset(cuts))


# -- bipartiteness ---------------------------------------------------------------

def _two_color(g: Graph):
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        for x in queue:
            for y in sorted(g.adj[x]):
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return None, (x, y, parent)
    return color, None


def is_bipartite(g: Graph) -> Optional[tuple[list, list]]:
    """Return a bipartition ``(A, B)`` or None when an odd cycle exists."""
    color, _ = _two_color(g)
    if color is None:
        return None
    a = [v for v in range(g.n) if color[v] == 0]
    b = [v for v in range(g.n) if color[v] == 1]
    return a, b


def find_odd_cycle(g: Graph) -> Optional[list]:
    """An odd cycle as a vertex sequence, or None if ``g`` is bipartite."""
    color, conflict = _two_color(g)
    if color is not None:
        return None
    x, y, parent = conflict
    # walk both BFS-tree paths up to their meeting point
    px = [x]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] != -1:
        py.append(parent[py[-1]])
    on_x = {v: i for i, v in enumerate(px)}
    j = 0
    while py[j] not in on_x:
        j += 1
    i = on_x[py[j]]
    return px[: i + 1] + list(reversed(py[:j]))


def has_triangle(g: Graph) -> bool:
    masks = g.masks
    return any(masks[u] & masks[v] for u, v in g.edges)


# -- theta graphs and cacti ------------------------------------------------------

@dataclass(frozen=True)
class ThetaSignature:
    k: int
    l: int
    m: int
    x: int = 0
    y: int = 1

    def __post_init__(self):
        params = sorted((self.k, self.l, self.m))
        if params[0] < 0 or params[:2].count(0) > 1:
            raise PreconditionError("theta parameters must be non-negative with at most one zero")
        object.__setattr__(self, "k", params[0])
        object.__setattr__(self, "l", params[1])
        object.__setattr__(self, "m", params[2])

    @property
    def params(self) -> tuple:
        return (self.k, self.l, self.m)

    @property
    def n(self) -> int:
        return 2 + self.k + self.l + self.m

    def build(self) -> Graph:
        return theta_graph(self.k, self.l, self.m)


def theta_paths(g: Graph) -> Optional[tuple[int, int, list]]:
    """If ``g`` is a theta graph return ``(x, y, paths)`` with each path from x to y."""
    if g.n < 4 or g.m != g.n + 1:
        return None
    deg3 = [v for v in range(g.n) if g.degree(v) == 3]
    if len(deg3) != 2 or any(g.degree(v) != 2 for v in range(g.n) if v not in deg3):
        return None
    x, y = deg3
    paths = []
    for start in g.neighbors(x):
        path = [x]
        prev, cur = x, start
        while cur not in (x, y):
            path.append(cur)
            nxt = [w for w in g.adj[cur] if w != prev]
            prev, cur = cur, nxt[0]
        if cur != y:
            return None
        path.append(y)
        paths.append(path)
    if sum(len(p) - 2 for p in paths) + 2 != g.n:
        return None
    return x, y, paths


def theta_recognize(g: Graph) -> Optional[ThetaSignature]:
    found = theta_paths(g)
    if found is None:
        return None
    x, y, paths = found
    k, l, m = sorted(len(p) - 2 for p in paths)
    return ThetaSignature(k, l, m, x, y)


@dataclass(frozen=True)
class CactusReport:
    is_cactus: bool
    block_kinds: tuple  # per block: "vertex", "edge", "cycle", or "other"
    cycle_lengths: tuple  # per block: cycle length or 0
    long_odd_cycles: int


def cactus_report(g: Graph) -> CactusReport:
    comps, dec = components_and_blocks(g)
    kinds = []
    lengths = []
    for b, es in zip(dec.blocks, dec.block_edges(g)):
        if len(b) == 1:
            kinds.append("vertex")
            lengths.append(0)
        elif len(b) == 2:
            kinds.append("edge")
            lengths.append(0)
        elif len(es) == len(b):
            kinds.append("cycle")
            lengths.append(len(b))
        else:
            kinds.append("other")
            lengths.append(0)
    ok = len(comps) == 1 and "other" not in kinds
    long_odd = sum(1 for k, ln in zip(kinds, lengths) if k == "cycle" and ln >= 5 and ln % 2 == 1)
    return CactusReport(ok, tuple(kinds), tuple(lengths), long_odd)


def is_cactus(g: Graph) -> bool:
    return cactus_report(g).is_cactus


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))
