"""Constructive extraction of rooted minors from colored schemes.

``untangle_cycle_scheme`` turns any colored scheme of a cycle into a rooted
cycle model by repeatedly contracting each root onto the next vertex of its
outgoing path, rerouting, renormalizing and recursing.

``removable_reduction`` contracts the paths of a star forest F onto their
centres and deletes the remaining vertices colored by the stable set S; it
leaves a scheme of H - S and single-edge connections from S, so any rooted
model of H - S extends to a rooted model of H.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import HypothesisViolation, InternalInvariantError, PreconditionError
from .graph import Graph, is_connected, norm_edge, quotient
from .minors import MinorModel, check_minor_model, find_rooted_minor
from .scheme import ColoredScheme, HScheme, normalize_scheme, validate_colored_scheme, validate_hscheme


def cycle_order(h: Graph) -> list:
    """Vertices of a cycle graph in cyclic order, starting at 0 towards its smaller neighbour."""
    if h.n < 3 or h.m != h.n or any(h.degree(v) != 2 for v in h.vertices) or not is_connected(h):
        raise PreconditionError("pattern is not a cycle")
    order = [0, min(h.adj[0])]
    while len(order) < h.n:
        a, b = order[-2], order[-1]
        order.append(next(x for x in h.adj[b] if x != a))
    return order


def untangle_cycle_scheme(c: ColoredScheme) -> MinorModel:
    """Rooted cycle model in the host of a colored cycle scheme."""
    s = c.scheme
    cyc = cycle_order(s.pattern)
    rep = validate_colored_scheme(c)
    if not rep.valid:
        raise PreconditionError("input is not a valid colored scheme: " + "; ".join(v.message for v in rep.violations))
    sets = _untangle(c, cyc)
    model = MinorModel.build(s.pattern, s.host, sets, list(s.roots))
    check = check_minor_model(model)
    if not check.valid:
        raise InternalInvariantError("untangling produced an invalid model: " + "; ".join(v.message for v in check.violations))
    return model


def _untangle(c: ColoredScheme, cyc: list) -> list:
    s = c.scheme
    g, n = s.host, len(cyc)
    if g.n == n:
        return [{r} for r in s.roots]
    nxt = {cyc[i]: cyc[(i + 1) % n] for i in range(n)}
    prv = {cyc[i]: cyc[i - 1] for i in range(n)}
    second = {}
    for u in cyc:
        p = s.path(u, nxt[u])
        if len(p) < 3:
            raise InternalInvariantError("a colored cycle scheme with extra vertices has a one-edge path")
        second[u] = p[1]
    g2, mapping = quotient(g, [{s.roots[u], second[u]} for u in cyc])
    roots2 = [mapping[r] for r in s.roots]
    paths2 = {}
    for u in cyc:
        image = []
        for x in s.path(u, nxt[u]):
            y = mapping[x]
            if not image or image[-1] != y:
                image.append(y)
        a, b = image.index(roots2[prv[u]]), image.index(roots2[u])
        seg = image[a : b + 1] if a <= b else list(reversed(image[b : a + 1]))
        paths2[(prv[u], u)] = seg
    s2 = HScheme.build(s.pattern, g2, roots2, paths2)
    rep = validate_hscheme(s2)
    if not rep.valid:
        raise InternalInvariantError("rerouted paths do not form a scheme: " + "; ".join(v.message for v in rep.violations))
    norm = normalize_scheme(s2)
    inner = _untangle(norm.colored, cyc)
    # pull back: normalized vertex -> merged vertices of g2 -> preimages in g
    pre: dict = {}
    for x in range(g.n):
        pre.setdefault(mapping[x], set()).add(x)
    out = []
    for bs in inner:
        full = set()
        for y in bs:
            for z in norm.classes[y]:
                full |= pre[z]
        out.append(full)
    return out


# -- removable-set reduction ------------------------------------------------------------

@dataclass
class RemovableReduction:
    original: ColoredScheme
    stable_set: tuple
    forest: tuple
    reduced: Graph  # host after contractions and deletions
    contraction_map: list  # original host vertex -> reduced vertex, or -1 if deleted
    pattern_rest: Graph  # H - S, relabeled densely
    pattern_rest_map: list  # vertex of H - S -> vertex of H
    scheme_rest: HScheme  # scheme of H - S in reduced - S
    host_rest_map: list  # vertex of reduced - S -> vertex of reduced
    single_edges: tuple  # (u, w) pattern edges with u in S now present as one host edge

    def extend_model(self, model: MinorModel) -> MinorModel:
        """Lift a rooted (H - S)-model in ``reduced - S`` to a rooted H-model in the original host."""
        check = check_minor_model(model)
        if not check.valid or model.roots != self.scheme_rest.roots:
            raise PreconditionError("expected a valid rooted model of H - S in the reduced host")
        s = self.original.scheme
        h = s.pattern
        sets: list = [None] * h.n
        red_root = [self.contraction_map[r] for r in s.roots]
        for u in self.stable_set:
            sets[u] = {red_root[u]}
        for i, bs in enumerate(model.branch_sets):
            sets[self.pattern_rest_map[i]] = {self.host_rest_map[x] for x in bs}
        pre: dict = {}
        for x, y in enumerate(self.contraction_map):
            if y >= 0:
                pre.setdefault(y, set()).add(x)
        full = [set().union(*(pre[y] for y in bs)) for bs in sets]
        out = MinorModel.build(h, s.host, full, list(s.roots))
        check = check_minor_model(out)
        if not check.valid:
            raise InternalInvariantError("extension produced an invalid model: " + "; ".join(v.message for v in check.violations))
        return out

    def solve(self) -> Optional[MinorModel]:
        """Search the reduced instance exhaustively and lift the result."""
        rest = self.scheme_rest
        m = find_rooted_minor(rest.host, rest.pattern, list(rest.roots))
        return None if m is None else self.extend_model(m)


def removable_hypotheses(c: ColoredScheme, stable: Iterable[int], forest: Iterable) -> list:
    """Every failed hypothesis of the removable-set reduction (empty when all hold)."""
    s = c.scheme
    h = s.pattern
    S = set(stable)
    F = {norm_edge(*e) for e in forest}
    problems = []
    if any(not 0 <= v < h.n for v in S):
        return ["S has vertices outside the pattern"]
    if any(h.has_edge(a, b) for a in S for b in S if a < b):
        problems.append("S is not stable")
    NS = {w for v in S for w in h.adj[v]} - S
    for e in sorted(F):
        if e not in h.edges:
            problems.append(f"forest edge {e} is not a pattern edge")
            continue
        a, b = e
        if not ((a in S and b in NS) or (b in S and a in NS)):
            problems.append(f"forest edge {e} does not join S to N(S)")
    fdeg: dict = {}
    for a, b in F:
        fdeg[a] = fdeg.get(a, 0) + 1
        fdeg[b] = fdeg.get(b, 0) + 1
    for w in sorted(NS):
        if fdeg.get(w, 0) == 0:
            problems.append(f"N(S) vertex {w} is isolated in the forest (isolated vertices must lie in S)")
    for v in sorted(S):
        if fdeg.get(v, 0) > 1:
            problems.append(f"S vertex {v} has forest degree {fdeg[v]}; stars must be rooted in N(S)")
    if problems:
        return problems
    for u in sorted(S):
        for w in sorted(h.adj[u]):
            if norm_edge(u, w) in F:
                continue
            x = s.path(u, w)[1]
            centres = [v for v in S if norm_edge(v, w) in F]
            if not any(x in s.path(v, w) for v in centres):
                problems.append(f"second vertex {x} of the path {u}-{w} lies on no forest path into {w}")
    return problems


def removable_reduction(c: ColoredScheme, stable: Iterable[int], forest: Iterable) -> RemovableReduction:
    """Contract the forest paths, delete the rest of S's color classes, and
    reroute the remaining paths.

    The coloring must satisfy every colored-scheme clause except possibly the
    degree bound, which the reduction never uses.
    """
    rep = validate_colored_scheme(c)
    fatal = [v for v in rep.violations if v.clause != "min_degree"]
    if fatal:
        raise PreconditionError("input is not a valid colored scheme: " + "; ".join(v.message for v in fatal))
    S = sorted(set(stable))
    F = sorted({norm_edge(*e) for e in forest})
    problems = removable_hypotheses(c, S, F)
    if problems:
        raise HypothesisViolation(problems)
    s = c.scheme
    h, g, f = s.pattern, s.host, c.colors
    Sset = set(S)
    groups: dict = {}
    for a, b in F:
        v, w = (a, b) if a in Sset else (b, a)
        groups.setdefault(w, {s.roots[w]}).update(s.path(v, w)[1:])
    merged = set().union(*groups.values()) if groups else set()
    g1, qmap = quotient(g, list(groups.values()))
    s_roots = {s.roots[u] for u in S}
    doomed = {qmap[x] for x in range(g.n) if f[x] in Sset and x not in s_roots and x not in merged}
    reduced, keep = g1.remove_vertices(doomed)
    index = {y: i for i, y in enumerate(keep)}
    cmap = [index.get(qmap[x], -1) for x in range(g.n)]
    red_roots = [cmap[r] for r in s.roots]

    single = []
    for u in S:
        for w in sorted(h.adj[u]):
            if not reduced.has_edge(red_roots[u], red_roots[w]):
                raise InternalInvariantError(f"path {u}-{w} did not shrink to a single edge")
            single.append((u, w))

    rest_vertices = [v for v in range(h.n) if v not in Sset]
    pattern_rest, _ = h.induced_subgraph(rest_vertices)
    pidx = {v: i for i, v in enumerate(rest_vertices)}
    host_rest, host_keep = reduced.remove_vertices(red_roots[u] for u in S)
    hidx = {y: i for i, y in enumerate(host_keep)}
    paths = {}
    for (x, y), p in s.paths:
        if x in Sset or y in Sset:
            continue
        walk_edges = {norm_edge(cmap[a], cmap[b]) for a, b in zip(p, p[1:]) if cmap[a] != cmap[b]}
        route = _walk_path(walk_edges, red_roots[x], red_roots[y])
        paths[(pidx[x], pidx[y])] = [hidx[z] for z in route]
    scheme_rest = HScheme.build(pattern_rest, host_rest, [hidx[red_roots[v]] for v in rest_vertices], paths)
    check = validate_hscheme(scheme_rest)
    if not check.valid:
        raise InternalInvariantError("reduced paths do not form a scheme: " + "; ".join(v.message for v in check.violations))
    return RemovableReduction(c, tuple(S), tuple(F), reduced, cmap, pattern_rest, rest_vertices,
                              scheme_rest, host_keep, tuple(single))


def _walk_path(edges: set, start: int, end: int) -> list:
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == end:
            break
        for y in sorted(adj.get(x, ())):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if end not in prev:
        raise InternalInvariantError("contracted path is disconnected")
    out = [end]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]
