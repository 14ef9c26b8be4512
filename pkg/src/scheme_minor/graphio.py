"""Edge-JSON and graph6 encodings of :class:`Graph`."""

from __future__ import annotations

import json
from typing import Any

from .errors import GraphValidationError, ParseError
from .graph import Graph


def graph_to_dict(g: Graph) -> dict:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.sorted_edges]}
    if g.labels:
        out["labels"] = {str(k): v for k, v in sorted(g.labels.items())}
    return out


def graph_from_dict(data: Any) -> Graph:
    if not isinstance(data, dict):
        raise GraphValidationError("graph JSON must be an object with 'n' and 'edges'")
    if "n" not in data or "edges" not in data:
        raise GraphValidationError("graph JSON needs both 'n' and 'edges'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphValidationError(f"'n' must be a non-negative integer, got {n!r}")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise GraphValidationError("'edges' must be a list")
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise GraphValidationError(f"edge {e!r} must be a pair of integers")
    labels = None
    if data.get("labels") is not None:
        raw = data["labels"]
        if not isinstance(raw, dict):
            raise GraphValidationError("'labels' must be an object")
        labels = {}
        for k, v in raw.items():
            try:
                idx = int(k)
            except ValueError:
                raise GraphValidationError(f"label key {k!r} is not a vertex index") from None
            if not 0 <= idx < n:
                raise GraphValidationError(f"label key {idx} outside 0..{n - 1}")
            labels[idx] = str(v)
    return Graph.from_edges(n, edges, labels=labels, strict=True)


def dumps_edge_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def loads_edge_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return graph_from_dict(data)


# -- graph6 ------------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def graph6_bits(g: Graph) -> list:
    """Upper-triangle adjacency bits in graph6 order: x(0,1), x(0,2), x(1,2), x(0,3), ..."""
    masks = g.masks
    return [(masks[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]


def to_graph6(g: Graph) -> str:
    bits = graph6_bits(g)
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return (_encode_n(g.n) + body).decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = s.encode("ascii", errors="replace")
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 character {chr(c)!r}", f"byte {i}")
    if not data:
        raise ParseError("empty graph6 string", "byte 0")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field", f"byte {len(data)}")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field", f"byte {len(data)}")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(body)}", f"byte {pos + min(len(body), need)}")
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    if any(bits[nbits:]):
        raise ParseError("non-zero padding bits", f"byte {len(data) - 1}")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def parse_graph(text: str, format: str = "edge-json") -> Graph:
    """Decode ``text`` in ``format`` ("edge-json" or "graph6")."""
    if format in ("edge-json", "json"):
        return loads_edge_json(text)
    if format == "graph6":
        return from_graph6(text)
    raise ParseError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "edge-json") -> str:
    if format in ("edge-json", "json"):
        return dumps_edge_json(g)
    if format == "graph6":
        return to_graph6(g)
    raise ParseError(f"unknown graph format {format!r}")
