"""Weighted line graphs and the maps between a graph and its line graph.

The line graph ``L`` has a vertex ``V_e`` per edge ``e`` of ``G`` and an edge
``[V_e, V_f]`` of length ``(L(e) + L(f)) / 2`` whenever ``e`` and ``f`` share a
vertex.  Vertex ``i`` of ``L`` always stands for edge ``i`` of ``G``.

On each line-graph edge the point ``Pm_L`` sits ``L(e)/2`` from ``V_e``.
The map ``h: L -> G`` sends ``V_e`` to the midpoint of ``e`` and ``Pm_L`` of
``[V_e, V_f]`` to the vertex shared by ``e`` and ``f``, and is an isometry on
each of the two half-edges in between.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from hyperline.errors import DegenerateLineGraph, NotACycle, OutsideImage
from hyperline.metric_graph import (
    INTERIOR,
    VERTEX,
    Geodesic,
    GraphPoint,
    MetricGraph,
    Segment,
    build_graph,
    grid_points,
    point_distance,
)
from hyperline.thinness import Target, envelope_max, line_summary


@dataclass(frozen=True)
class LineEdge:
    """Edge ``[V_first, V_second]`` of the line graph, oriented as stored in ``L``."""

    first: int  # edge of G sitting at offset 0
    second: int
    shared: int  # vertex of G common to both


@dataclass
class LineGraphCorrespondence:
    G: MetricGraph
    L: MetricGraph
    line_edges: tuple
    edge_of_pair: dict

    def vertex_of_edge(self, e: int) -> int:
        return e

    def edge_of_vertex(self, x: int) -> int:
        return x

    def shared_vertex(self, line_edge: int) -> int:
        return self.line_edges[line_edge].shared

    def pml_of_edge(self, line_edge: int) -> GraphPoint:
        """The point of the line-graph edge at distance ``L(e_first)/2`` from ``V_first``."""
        le = self.line_edges[line_edge]
        return GraphPoint(INTERIOR, line_edge, self.G.edges[le.first].length / 2)

    def pml_points(self) -> list[GraphPoint]:
        return [self.pml_of_edge(i) for i in range(self.L.m)]

    def pmlv_points(self) -> list[GraphPoint]:
        return [GraphPoint.vertex(i) for i in range(self.L.n)] + self.pml_points()

    def clique(self, w: int) -> list[int]:
        """Line-graph vertices of the edges at ``w``; they span a complete subgraph."""
        return list(self.G.incident[w])


def build_line_graph(G: MetricGraph) -> LineGraphCorrespondence:
    if G.m < 2:
        raise DegenerateLineGraph(f"line graph of a graph with {G.m} edge(s) has no edges")
    pairs = []
    for w in range(G.n):
        for a, b in combinations(sorted(G.incident[w]), 2):
            pairs.append((a, b, w))
    pairs.sort()
    labels = [(G.labels[e.u], G.labels[e.v]) for e in G.edges]
    lengths = [(labels[a], labels[b], (G.edges[a].length + G.edges[b].length) / 2) for a, b, _ in pairs]
    L = build_graph(labels, lengths)
    line_edges = tuple(LineEdge(a, b, w) for a, b, w in pairs)
    edge_of_pair = {}
    for i, (a, b, _) in enumerate(pairs):
        edge_of_pair[(a, b)] = i
        edge_of_pair[(b, a)] = i
    return LineGraphCorrespondence(G, L, line_edges, edge_of_pair)


def _toward(G: MetricGraph, e: int, w: int, dist: Fraction) -> GraphPoint:
    """Point of edge ``e`` that lies ``dist`` from its midpoint toward endpoint ``w``."""
    edge = G.edges[e]
    mid = edge.length / 2
    return G.point_on_edge(e, mid + dist if w == edge.v else mid - dist)


def h_map(corr: LineGraphCorrespondence, x: GraphPoint) -> GraphPoint:
    G = corr.G
    if x.kind == VERTEX:
        return G.midpoint(corr.edge_of_vertex(x.index))
    le = corr.line_edges[x.index]
    c = G.edges[le.first].length / 2
    t = x.offset
    if t <= c:
        return _toward(G, le.first, le.shared, t)
    # Beyond Pm_L: measured back from the far vertex V_second.
    return _toward(G, le.second, le.shared, corr.L.edges[x.index].length - t)


def h_preimage(corr: LineGraphCorrespondence, x: GraphPoint) -> list[GraphPoint]:
    G = corr.G
    if x.kind == INTERIOR:
        if 2 * x.offset != G.edges[x.index].length:
            raise OutsideImage(f"{G.describe(x)} is neither a vertex nor a midpoint")
        return [GraphPoint.vertex(corr.vertex_of_edge(x.index))]
    edges = sorted(G.incident[x.index])
    if len(edges) < 2:
        raise OutsideImage(f"vertex {G.describe(x)} has degree {len(edges)}; it is not in h(L(G))")
    return [corr.pml_of_edge(corr.edge_of_pair[(a, b)]) for a, b in combinations(edges, 2)]


def _check_cycle(G: MetricGraph, cycle: Sequence[int]) -> list[int]:
    """Shared vertices ``s_i = c_i & c_{i+1}`` of a cyclic edge sequence."""
    r = len(cycle)
    if r < 3 or len(set(cycle)) != r:
        raise NotACycle("a cycle needs at least three distinct edges")
    shared = []
    for i in range(r):
        e, f = G.edges[cycle[i]], G.edges[cycle[(i + 1) % r]]
        common = {e.u, e.v} & {f.u, f.v}
        if len(common) != 1:
            raise NotACycle(f"edges {cycle[i]} and {cycle[(i + 1) % r]} are not adjacent")
        shared.append(common.pop())
    if len(set(shared)) != r:
        raise NotACycle("edge sequence revisits a vertex")
    for i in range(r):
        e = G.edges[cycle[i]]
        if {e.u, e.v} != {shared[i - 1], shared[i]}:
            raise NotACycle("edge sequence does not close up into a simple cycle")
    return shared


def lift_cycle(corr: LineGraphCorrespondence, cycle: Sequence[int]) -> list[int]:
    """Edges of ``C*``: the line-graph cycle through ``V_c`` for the edges ``c`` of ``C``."""
    _check_cycle(corr.G, cycle)
    r = len(cycle)
    return [corr.edge_of_pair[(cycle[i], cycle[(i + 1) % r])] for i in range(r)]


def _on_line_edge(corr, line_edge: int, from_vertex: int, dist) -> GraphPoint:
    le = corr.line_edges[line_edge]
    length = corr.L.edges[line_edge].length
    off = dist if le.first == from_vertex else length - dist
    return corr.L.point_on_edge(line_edge, off)


def g_c_map(corr: LineGraphCorrespondence, cycle: Sequence[int], x: GraphPoint) -> GraphPoint:
    """Inverse of ``h`` restricted to the lifted cycle ``C*``."""
    G = corr.G
    shared = _check_cycle(G, cycle)
    r = len(cycle)
    if x.kind == VERTEX:
        if x.index not in shared:
            raise NotACycle(f"{G.describe(x)} is not on the cycle")
        i = shared.index(x.index)
        return corr.pml_of_edge(corr.edge_of_pair[(cycle[i], cycle[(i + 1) % r])])
    if x.index not in cycle:
        raise NotACycle(f"{G.describe(x)} is not on the cycle")
    i = list(cycle).index(x.index)
    e = G.edges[x.index]
    mid = e.length / 2
    if x.offset == mid:
        return GraphPoint.vertex(corr.vertex_of_edge(x.index))
    nxt = shared[i]
    # Which half of e holds x decides which lifted edge it lands on.
    toward_v = x.offset > mid
    dist = abs(x.offset - mid)
    if (nxt == e.v) == toward_v:
        return _on_line_edge(corr, corr.edge_of_pair[(cycle[i], cycle[(i + 1) % r])], x.index, dist)
    return _on_line_edge(corr, corr.edge_of_pair[(cycle[i - 1], cycle[i])], x.index, dist)


def _edge_through(G: MetricGraph, p: GraphPoint, q: GraphPoint) -> int:
    if p.kind == INTERIOR:
        return p.index
    if q.kind == INTERIOR:
        return q.index
    return G.edge_between[(p.index, q.index)]


def _offset_on(G: MetricGraph, p: GraphPoint, edge: int):
    if p.kind == INTERIOR:
        return p.offset
    return 0 if G.edges[edge].u == p.index else G.edges[edge].length


def path_from_waypoints(G: MetricGraph, pts: Sequence[GraphPoint]) -> Geodesic:
    """Chain consecutive waypoints (each pair on a common edge) into a path."""
    segs: list[Segment] = []
    for p, q in zip(pts, pts[1:]):
        if p == q:
            continue
        e = _edge_through(G, p, q)
        s = Segment(e, _offset_on(G, p, e), _offset_on(G, q, e))
        if segs and segs[-1].edge == e and segs[-1].end == s.start:
            segs[-1] = Segment(e, segs[-1].start, s.end)
        else:
            segs.append(s)
    return Geodesic(pts[0], pts[-1], tuple(segs), sum((s.length for s in segs), Fraction(0)))


def _image_waypoints(corr: LineGraphCorrespondence, start: GraphPoint, segments) -> list[GraphPoint]:
    out = [h_map(corr, start)]
    for s in segments:
        c = corr.G.edges[corr.line_edges[s.edge].first].length / 2
        if s.lo < c < s.hi:
            out.append(GraphPoint.vertex(corr.line_edges[s.edge].shared))
        out.append(h_map(corr, corr.L.point_on_edge(s.edge, s.end)))
    return out


def decompose_geodesic_image(corr: LineGraphCorrespondence, gamma: Geodesic) -> tuple[Geodesic, Geodesic, Geodesic]:
    """Split ``h(gamma)`` into end pieces and a middle piece, each a geodesic of G.

    The end pieces are the images of the bits of ``gamma`` before its first
    and after its last vertex of ``L``; when ``gamma`` lies in one edge of
    ``L`` the whole image is the middle piece.
    """
    G, L = corr.G, corr.L
    segs = list(gamma.segments)
    if len(segs) <= 1:
        head, mid, tail = [], segs, []
    else:
        head = [segs[0]] if gamma.source.kind == INTERIOR else []
        tail = [segs[-1]] if gamma.target.kind == INTERIOR else []
        mid = segs[len(head) : len(segs) - len(tail)]
    pieces = []
    cursor = gamma.source
    for part in (head, mid, tail):
        wp = _image_waypoints(corr, cursor, part)
        pieces.append(path_from_waypoints(G, wp))
        if part:
            cursor = L.point_on_edge(part[-1].edge, part[-1].end)
    for g in pieces:
        if g.length != point_distance(G, g.source, g.target):
            raise AssertionError(f"image piece from {G.describe(g.source)} is not a geodesic")
    return tuple(pieces)


@dataclass(frozen=True)
class QuasiIsometryReport:
    max_lipschitz_excess: Fraction
    lipschitz_witness: tuple
    max_reciprocal_excess: Fraction
    reciprocal_witness: tuple
    fullness_radius: Fraction
    fullness_witness: GraphPoint
    vertex_isometry: bool
    sample_count: int
    beta: Fraction
    epsilon: Fraction

    @property
    def passes(self) -> bool:
        return (
            self.max_lipschitz_excess <= 0
            and self.max_reciprocal_excess <= 0
            and self.fullness_radius <= self.epsilon
            and self.vertex_isometry
        )


def image_pieces(corr: LineGraphCorrespondence) -> list[tuple[int, Fraction, Fraction]]:
    """``h(L)`` as closed pieces of edges of G: half-edges toward vertices of degree >= 2."""
    G = corr.G
    pieces = set()
    for le in corr.line_edges:
        for e in (le.first, le.second):
            edge = G.edges[e]
            mid = edge.length / 2
            pieces.add((e, Fraction(0), mid) if le.shared == edge.u else (e, mid, Fraction(edge.length)))
    return sorted(pieces)


def verify_quasi_isometry(
    corr: LineGraphCorrespondence, resolution: Fraction | None = None
) -> QuasiIsometryReport:
    """Check the Lipschitz, reciprocal and fullness bounds of ``h`` exactly.

    Distances are compared on every pair of sample points: all of
    ``PM_L V(L)`` plus a grid on ``L`` at ``resolution`` (default ``l_max/4``).
    The fullness radius is computed exactly over all of G.
    """
    G, L = corr.G, corr.L
    lmax = Fraction(G.l_max)
    res = Fraction(resolution) if resolution is not None else lmax / 4
    samples = sorted(set(corr.pmlv_points()) | set(grid_points(L, res)))
    images = [h_map(corr, x) for x in samples]
    lip = rec = None
    lip_w = rec_w = ()
    for i, j in combinations(range(len(samples)), 2):
        dl = point_distance(L, samples[i], samples[j])
        dg = point_distance(G, images[i], images[j])
        a = dg - dl
        b = dl - dg - 2 * lmax
        if lip is None or a > lip:
            lip, lip_w = a, (samples[i], samples[j])
        if rec is None or b > rec:
            rec, rec_w = b, (samples[i], samples[j])
    iso = all(
        L.dist[a][b] == point_distance(G, G.midpoint(a), G.midpoint(b))
        for a, b in combinations(range(L.n), 2)
    )
    targets = [
        Target(G, e, lo, hi, G.point_on_edge(e, lo), G.point_on_edge(e, hi)) for e, lo, hi in image_pieces(corr)
    ]
    full = None
    full_w = None
    for e in G.edges:
        P, M, same = line_summary(G, e.index, targets)
        val, t = envelope_max(0, e.length, P, M, same)
        if full is None or val > full:
            full, full_w = val, G.point_on_edge(e.index, t)
    return QuasiIsometryReport(
        Fraction(lip if lip is not None else 0),
        lip_w,
        Fraction(rec if rec is not None else -2 * lmax),
        rec_w,
        Fraction(full),
        full_w,
        iso,
        len(samples),
        2 * lmax,
        lmax / 2,
    )
