"""H-schemes, colored schemes, and normalization into a colored scheme.

An H-scheme is one host path per pattern edge, each path meeting the root set
only at its own two roots, such that all paths through a common host vertex
share a pattern endpoint.  A colored scheme additionally carries a proper
coloring of the host by pattern vertices that fixes the roots, keeps every
path inside its two endpoint colors, and leaves no non-root vertex of degree
below 4.

Violation clause identifiers used in reports:

==========================  ==================================================
``roots``                   root map is not an injection into the host
``coverage``                a pattern edge has no path, or a path has no edge
``path``                    a path is not a walk of distinct adjacent vertices
``path_avoids_roots``       a path passes through a third root
``common_endpoint``         paths through one vertex share no pattern endpoint
``underlying_graph``        host has vertices/edges on no path
``roots_fixed``             color of a root is not its own pattern vertex
``path_colors``             a path uses colors outside its two endpoints
``proper_coloring``         an edge joins two vertices of one color
``min_degree``              a non-root vertex has degree below 4
==========================  ==================================================

Derived properties that must follow once the clauses above hold are checked
too; any failure there is reported under ``derived:<name>`` and marks the
report as an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

from .errors import InternalInvariantError, PreconditionError
from .graph import Graph, norm_edge
from .graphio import graph_from_dict, graph_to_dict
from .report import ValidationReport


@dataclass(frozen=True)
class HScheme:
    pattern: Graph
    host: Graph
    roots: tuple  # roots[v] = host vertex of pattern vertex v
    paths: tuple  # sorted ((u, v), path) pairs, u < v, path from roots[u] to roots[v]

    @classmethod
    def build(cls, pattern: Graph, host: Graph, roots, paths: Mapping) -> "HScheme":
        if isinstance(roots, Mapping):
            roots = [roots[v] for v in range(pattern.n)]
        items = []
        for key, path in paths.items():
            u, v = key
            path = list(path)
            if u > v:
                u, v = v, u
                path.reverse()
            items.append(((u, v), tuple(path)))
        return cls(pattern, host, tuple(roots), tuple(sorted(items)))

    @property
    def path_map(self) -> dict:
        return dict(self.paths)

    def path(self, u: int, v: int) -> tuple:
        """Path oriented from the root of ``u`` to the root of ``v``."""
        p = self.path_map[norm_edge(u, v)]
        return p if u < v else tuple(reversed(p))

    def to_dict(self) -> dict:
        return {
            "pattern": graph_to_dict(self.pattern),
            "host": graph_to_dict(self.host),
            "roots": {str(v): r for v, r in enumerate(self.roots)},
            "paths": {f"{u}-{v}": list(p) for (u, v), p in self.paths},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HScheme":
        pattern = graph_from_dict(data["pattern"])
        host = graph_from_dict(data["host"])
        raw_roots = data["roots"]
        roots = []
        for v in range(pattern.n):
            if str(v) not in raw_roots:
                raise PreconditionError(f"no root given for pattern vertex {v}")
            roots.append(int(raw_roots[str(v)]))
        paths = {}
        for key, path in data["paths"].items():
            a, _, b = str(key).partition("-")
            paths[(int(a), int(b))] = [int(x) for x in path]
        return cls.build(pattern, host, roots, paths)


@dataclass(frozen=True)
class ColoredScheme:
    scheme: HScheme
    colors: tuple  # colors[x] = pattern vertex assigned to host vertex x

    def to_dict(self) -> dict:
        out = self.scheme.to_dict()
        out["colors"] = {str(x): c for x, c in enumerate(self.colors)}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredScheme":
        s = HScheme.from_dict(data)
        colors = tuple(int(data["colors"][str(x)]) for x in range(s.host.n))
        return cls(s, colors)


def identity_scheme(h: Graph) -> HScheme:
    """``h`` as its own scheme: every edge is a one-edge path."""
    return HScheme.build(h, h, list(range(h.n)), {e: list(e) for e in h.sorted_edges})


def identity_colored_scheme(h: Graph) -> ColoredScheme:
    return ColoredScheme(identity_scheme(h), tuple(range(h.n)))


def underlying_graph(s: HScheme) -> tuple[set, set]:
    """Vertices and edges of the paths; roots count even when isolated."""
    verts: set = set(s.roots)
    edges: set = set()
    for _, p in s.paths:
        verts.update(p)
        edges.update(norm_edge(a, b) for a, b in zip(p, p[1:]))
    return verts, edges


def validate_hscheme(s: HScheme) -> ValidationReport:
    rep = ValidationReport()
    h, g = s.pattern, s.host
    if len(s.roots) != h.n or any(not 0 <= r < g.n for r in s.roots) or len(set(s.roots)) != len(s.roots):
        rep.add("roots", "roots must map every pattern vertex injectively into the host", list(s.roots))
        return rep
    root_set = set(s.roots)
    pm = s.path_map
    for e in h.sorted_edges:
        if e not in pm:
            rep.add("coverage", f"pattern edge {e} has no path", list(e))
    for e in pm:
        if e not in h.edges:
            rep.add("coverage", f"path given for non-edge {e}", list(e))
    for (u, v), p in s.paths:
        if len(p) < 2 or p[0] != s.roots[u] or p[-1] != s.roots[v]:
            rep.add("path", f"path for {u}-{v} must run from root {s.roots[u]} to root {s.roots[v]}", [u, v])
            continue
        if len(set(p)) != len(p):
            rep.add("path", f"path for {u}-{v} repeats a vertex", [u, v])
            continue
        if any(not 0 <= x < g.n for x in p):
            rep.add("path", f"path for {u}-{v} leaves the host", [u, v])
            continue
        missing = [(a, b) for a, b in zip(p, p[1:]) if not g.has_edge(a, b)]
        if missing:
            rep.add("path", f"path for {u}-{v} uses non-edges {missing}", [u, v])
            continue
        inner_roots = sorted(x for x in p[1:-1] if x in root_set)
        if inner_roots:
            rep.add("path_avoids_roots", f"path for {u}-{v} passes through roots {inner_roots}", {"edge": [u, v], "roots": inner_roots})
    if rep.violations:
        return rep
    through: dict = {}
    for e, p in s.paths:
        for x in p:
            through.setdefault(x, []).append(e)
    for x in sorted(through):
        es = through[x]
        if len(es) < 2:
            continue
        common = reduce(lambda acc, e: acc & set(e), es, set(es[0]))
        if not common:
            rep.add("common_endpoint", f"paths through host vertex {x} share no pattern endpoint", {"vertex": x, "edges": [list(e) for e in es]})
    verts, edges = underlying_graph(s)
    rep.info["unused_vertices"] = sorted(set(range(g.n)) - verts)
    rep.info["unused_edges"] = [list(e) for e in sorted(g.edges - edges)]
    return rep


def _derived_checks(c: ColoredScheme, rep: ValidationReport) -> None:
    s, f = c.scheme, c.colors
    g, h = s.host, s.pattern
    roots = set(s.roots)
    for (u, v), p in s.paths:
        expected = [u if i % 2 == 0 else v for i in range(len(p))]
        if list(f[x] for x in p) != expected:
            rep.add("derived:colors_alternate", f"colors do not alternate on path {u}-{v}", [u, v])
        pset = set(p)
        consecutive = {norm_edge(a, b) for a, b in zip(p, p[1:])}
        chords = [e for e in g.edges if e[0] in pset and e[1] in pset and e not in consecutive]
        if chords:
            rep.add("derived:paths_induced", f"path {u}-{v} has chords {chords}", [u, v])
    count: dict = {}
    for _, p in s.paths:
        for a, b in zip(p, p[1:]):
            e = norm_edge(a, b)
            count[e] = count.get(e, 0) + 1
    if any(count.get(e, 0) != 1 for e in g.edges):
        rep.add("derived:edge_in_one_path", "some host edge is not on exactly one path")
    if any(not h.has_edge(f[a], f[b]) for a, b in g.edges):
        rep.add("derived:homomorphism", "coloring is not a homomorphism to the pattern")
    if any(cnt > 1 for cnt in count.values()):
        rep.add("derived:immersion", "paths are not edge-disjoint")
    on_paths: dict = {}
    for e, p in s.paths:
        for x in p:
            on_paths[x] = on_paths.get(x, 0) + 1
    low = [x for x in range(g.n) if x not in roots and on_paths.get(x, 0) < 2]
    if low:
        rep.add("derived:nonroot_on_two_paths", f"non-root vertices on fewer than two paths: {low}", low)
    for u in range(h.n):
        if h.degree(u) != 2:
            continue
        color_u = {x for x in range(g.n) if f[x] == u}
        for w in h.adj[u]:
            if not color_u <= set(s.path(u, w)):
                rep.add("derived:degree_two_color_class", f"path {u}-{w} misses a vertex of color {u}", [u, w])


def validate_colored_scheme(c: ColoredScheme) -> ValidationReport:
    rep = validate_hscheme(c.scheme)
    if not rep.valid:
        return rep
    s, f = c.scheme, c.colors
    g, h = s.host, s.pattern
    if len(f) != g.n or any(not 0 <= x < h.n for x in f):
        rep.add("roots_fixed", "coloring must map every host vertex to a pattern vertex")
        return rep
    if rep.info.get("unused_vertices") or rep.info.get("unused_edges"):
        rep.add("underlying_graph", "host must be exactly the union of the paths",
                {"vertices": rep.info["unused_vertices"], "edges": rep.info["unused_edges"]})
    for v, r in enumerate(s.roots):
        if f[r] != v:
            rep.add("roots_fixed", f"root {r} of pattern vertex {v} has color {f[r]}", [v, r])
    for (u, v), p in s.paths:
        cols = {f[x] for x in p}
        if cols != {u, v}:
            rep.add("path_colors", f"path {u}-{v} has colors {sorted(cols)}", [u, v])
    bad = [list(e) for e in g.sorted_edges if f[e[0]] == f[e[1]]]
    if bad:
        rep.add("proper_coloring", "edges with equally colored endpoints", bad)
    roots = set(s.roots)
    low = [x for x in range(g.n) if x not in roots and g.degree(x) < 4]
    if low:
        rep.add("min_degree", f"non-root vertices of degree below 4: {low}", low)
    if rep.valid:
        _derived_checks(c, rep)
        if not rep.valid:
            rep.info["implementation_bug"] = True
    return rep


# -- normalization -------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    op: str  # "delete_vertex" | "delete_edge" | "contract" | "shortcut"
    rule: str  # "unused" | "single_path" | "induced" | "same_color"
    args: tuple

    def to_dict(self) -> dict:
        return {"op": self.op, "rule": self.rule, "args": [list(a) if isinstance(a, tuple) else a for a in self.args]}


@dataclass
class NormalizationResult:
    colored: ColoredScheme
    trace: list
    vertex_map: list  # output vertex -> input host vertex that survived
    classes: list  # output vertex -> sorted input host vertices merged into it

    def to_dict(self) -> dict:
        return {
            "colored_scheme": self.colored.to_dict(),
            "trace": [t.to_dict() for t in self.trace],
            "vertex_map": list(self.vertex_map),
            "classes": [list(c) for c in self.classes],
        }


class _Working:
    """Mutable host and paths keyed by original host vertex ids."""

    def __init__(self, s: HScheme):
        self.adj = {x: set(s.host.adj[x]) for x in range(s.host.n)}
        self.roots = list(s.roots)
        self.root_color = {r: v for v, r in enumerate(s.roots)}
        self.paths = {e: list(p) for e, p in s.paths}
        self.classes = {x: {x} for x in range(s.host.n)}

    def delete_vertex(self, x: int) -> None:
        for y in self.adj.pop(x):
            self.adj[y].discard(x)
        del self.classes[x]

    def delete_edge(self, x: int, y: int) -> None:
        self.adj[x].discard(y)
        self.adj[y].discard(x)

    def contract(self, keep: int, gone: int) -> None:
        for y in self.adj.pop(gone):
            self.adj[y].discard(gone)
            if y != keep:
                self.adj[y].add(keep)
                self.adj[keep].add(y)
        self.classes[keep] |= self.classes.pop(gone)
        for e, p in self.paths.items():
            if gone in p:
                if keep in p:
                    p.remove(gone)
                else:
                    p[p.index(gone)] = keep

    def on_paths(self) -> dict:
        out: dict = {}
        for e, p in self.paths.items():
            for x in p:
                out.setdefault(x, []).append(e)
        return out

    def used_edges(self) -> set:
        return {norm_edge(a, b) for p in self.paths.values() for a, b in zip(p, p[1:])}

    def coloring(self) -> dict:
        f = {r: v for r, v in self.root_color.items()}
        for x, es in self.on_paths().items():
            if x in self.root_color:
                f[x] = self.root_color[x]
            else:
                common = reduce(lambda acc, e: acc & set(e), es, set(es[0]))
                f[x] = min(common)
        return f


def _shortcut(adj: dict, path: list) -> list:
    """Shortest subsequence of ``path`` that is still a walk along host edges.

    Such a path is automatically induced; ties go to the lexicographically
    least vertex sequence.
    """
    n = len(path)
    # best[i] = (length, sequence) of the best chain from path[i] to the end
    best: list = [None] * n
    best[n - 1] = (0, [path[n - 1]])
    for i in range(n - 2, -1, -1):
        cand = None
        for j in range(i + 1, n):
            if best[j] is not None and path[j] in adj[path[i]]:
                option = (best[j][0] + 1, [path[i]] + best[j][1])
                if cand is None or option < cand:
                    cand = option
        best[i] = cand
    return best[0][1]


def normalize_scheme(s: HScheme) -> NormalizationResult:
    """Turn an H-scheme into a colored scheme on a rooted minor of its host.

    Operations, always taking the earliest applicable one and the least target:
    delete unused vertices/edges; contract a non-root vertex lying on a single
    path into its smallest neighbour; replace a non-induced path by its
    shortest induced subsequence; contract an edge whose endpoints get the
    same color.  Every step is recorded so the host reduction can be replayed.
    """
    rep = validate_hscheme(s)
    if not rep.valid:
        raise PreconditionError("input is not a valid scheme: " + "; ".join(v.message for v in rep.violations))
    w = _Working(s)
    trace: list = []
    roots = set(w.roots)
    while True:
        on = w.on_paths()
        unused_v = sorted(x for x in w.adj if x not in on and x not in roots)
        if unused_v:
            x = unused_v[0]
            w.delete_vertex(x)
            trace.append(TraceStep("delete_vertex", "unused", (x,)))
            continue
        used = w.used_edges()
        all_edges = sorted({norm_edge(x, y) for x in w.adj for y in w.adj[x]})
        unused_e = [e for e in all_edges if e not in used]
        if unused_e:
            e = unused_e[0]
            w.delete_edge(*e)
            trace.append(TraceStep("delete_edge", "unused", (e,)))
            continue
        single = sorted(x for x, es in on.items() if x not in roots and len(es) == 1)
        if single:
            x = single[0]
            a = min(w.adj[x])
            w.contract(a, x)
            trace.append(TraceStep("contract", "single_path", (a, x)))
            continue
        chorded = None
        for e in sorted(w.paths):
            p = w.paths[e]
            pos = {y: i for i, y in enumerate(p)}
            if any(abs(pos[y] - pos[x]) > 1 for x in p for y in w.adj[x] if y in pos):
                chorded = e
                break
        if chorded is not None:
            old = list(w.paths[chorded])
            new = _shortcut(w.adj, old)
            w.paths[chorded] = new
            trace.append(TraceStep("shortcut", "induced", (chorded, tuple(old), tuple(new))))
            continue
        f = w.coloring()
        mono = [e for e in all_edges if f[e[0]] == f[e[1]]]
        if mono:
            x, y = mono[0]
            # two roots never share a color, so at most one endpoint is a root
            keep, gone = (y, x) if y in roots else (x, y)
            w.contract(keep, gone)
            trace.append(TraceStep("contract", "same_color", (keep, gone)))
            continue
        break

    survivors = sorted(w.adj)
    index = {x: i for i, x in enumerate(survivors)}
    host = Graph.from_edges(len(survivors), [(index[x], index[y]) for x in w.adj for y in w.adj[x] if x < y])
    f = w.coloring()
    new_roots = [index[r] for r in w.roots]
    new_paths = {e: [index[x] for x in p] for e, p in w.paths.items()}
    scheme = HScheme.build(s.pattern, host, new_roots, new_paths)
    colored = ColoredScheme(scheme, tuple(f[x] for x in survivors))
    out_rep = validate_colored_scheme(colored)
    if not out_rep.valid:
        raise InternalInvariantError("normalization produced an invalid colored scheme: "
                                     + "; ".join(v.message for v in out_rep.violations))
    classes = [sorted(w.classes[x]) for x in survivors]
    return NormalizationResult(colored, trace, survivors, classes)


def replay_trace(host: Graph, trace: Sequence[TraceStep]) -> tuple[Graph, list]:
    """Apply the deletions and contractions of ``trace`` to ``host``.

    Returns the compacted graph and the list of surviving original vertices.
    """
    adj = {x: set(host.adj[x]) for x in range(host.n)}
    for step in trace:
        if step.op == "delete_vertex":
            (x,) = step.args
            for y in adj.pop(x):
                adj[y].discard(x)
        elif step.op == "delete_edge":
            ((x, y),) = step.args
            if y not in adj[x]:
                raise PreconditionError(f"trace deletes missing edge {(x, y)}")
            adj[x].discard(y)
            adj[y].discard(x)
        elif step.op == "contract":
            keep, gone = step.args
            if gone not in adj[keep]:
                raise PreconditionError(f"trace contracts non-edge {(keep, gone)}")
            for y in adj.pop(gone):
                adj[y].discard(gone)
                if y != keep:
                    adj[y].add(keep)
                    adj[keep].add(y)
        elif step.op == "shortcut":
            continue
        else:
            raise PreconditionError(f"unknown trace operation {step.op!r}")
    survivors = sorted(adj)
    index = {x: i for i, x in enumerate(survivors)}
    g = Graph.from_edges(len(survivors), [(index[x], index[y]) for x in adj for y in adj[x] if x < y])
    return g, survivors
