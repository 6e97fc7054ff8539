"""Reading and writing graphs, points and geodesics.

Two graph formats are understood:

* JSON: ``{"vertices": ["a", ...], "edges": [{"u": "a", "v": "b", "len": "3/2"}, ...]}``
* text: one edge per line, ``u v p/q``; blank lines and ``#`` comments ignored.

Lengths are always written as rational strings, never floats.
"""

from __future__ import annotations

import json
from pathlib import Path

from hyperline.errors import GraphError
from hyperline.metric_graph import (
    VERTEX,
    Geodesic,
    GraphPoint,
    MetricGraph,
    build_graph,
    format_rational,
)


def _label_str(label) -> str:
    if isinstance(label, tuple):
        return "|".join(_label_str(x) for x in label)
    return str(label)


def _build_checked(vertices, triples, where) -> MetricGraph:
    # Re-raise with line/entry numbers; build_graph reports positions 0-based.
    try:
        return build_graph(vertices, triples)
    except GraphError as exc:
        msg = str(exc)
        if msg.startswith("edge "):
            pos, rest = msg[5:].split(":", 1)
            raise type(exc)(f"{where(int(pos))}:{rest}") from None
        raise


def graph_from_json(data) -> MetricGraph:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        vertices = [str(v) for v in data["vertices"]]
        triples = [(str(e["u"]), str(e["v"]), str(e["len"])) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: missing {exc}") from None
    return _build_checked(vertices, triples, lambda i: f"edge entry {i + 1}")


def graph_from_text(text: str) -> MetricGraph:
    vertices: list[str] = []
    seen = set()
    triples = []
    line_of = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v length', got {raw!r}")
        u, v, length = parts
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
        triples.append((u, v, length))
        line_of.append(lineno)
    return _build_checked(vertices, triples, lambda i: f"line {line_of[i]}")


def load_graph(path) -> MetricGraph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return graph_from_json(text)
    return graph_from_text(text)


def graph_to_json(G: MetricGraph) -> dict:
    return {
        "vertices": [_label_str(x) for x in G.labels],
        "edges": [
            {
                "u": _label_str(G.labels[e.u]),
                "v": _label_str(G.labels[e.v]),
                "len": format_rational(e.length),
            }
            for e in G.edges
        ],
    }


def graph_to_text(G: MetricGraph) -> str:
    return "".join(
        f"{_label_str(G.labels[e.u])} {_label_str(G.labels[e.v])} {format_rational(e.length)}\n"
        for e in G.edges
    )


def point_to_json(G: MetricGraph, p: GraphPoint) -> dict:
    if p.kind == VERTEX:
        return {"vertex": _label_str(G.labels[p.index])}
    e = G.edges[p.index]
    return {
        "edge": [_label_str(G.labels[e.u]), _label_str(G.labels[e.v])],
        "offset": format_rational(p.offset),
    }


def geodesic_to_json(G: MetricGraph, g: Geodesic) -> dict:
    segments = []
    for s in g.segments:
        e = G.edges[s.edge]
        segments.append(
            {
                "edge": [_label_str(G.labels[e.u]), _label_str(G.labels[e.v])],
                "from": format_rational(s.start),
                "to": format_rational(s.end),
            }
        )
    return {
        "from": point_to_json(G, g.source),
        "to": point_to_json(G, g.target),
        "length": format_rational(g.length),
        "segments": segments,
    }
