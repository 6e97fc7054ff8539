"""Exact thinness of geodesic triangles (and of point-vs-path configurations).

For a point ``p`` at offset ``t`` on an edge ``e = [u, v]`` and a target
segment ``S`` not inside ``e``, ``d(p, S) = min(t + d(u, S), L(e) - t + d(v, S))``.
A target inside ``e`` adds the in-edge distance, which is linear once the
source range is cut at the target's ends.  So on each piece the distance
to a union of segments is ``min(t + P, M - t, C)``: concave, and maximised in
closed form at ``t = (M - P) / 2`` clamped to the piece.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hyperline.metric_graph import (
    INTERIOR,
    VERTEX,
    Geodesic,
    GraphPoint,
    MetricGraph,
    Number,
    half,
    point_distance,
)


class Target:
    """A closed piece of an edge (possibly a single point) seen as a distance target."""

    __slots__ = ("edge", "lo", "hi", "near")

    def __init__(self, G: MetricGraph, edge: int, lo: Number, hi: Number, a: GraphPoint, b: GraphPoint):
        # edge == -1 marks a lone vertex; it never needs the in-edge term.
        self.edge = edge
        self.lo = lo
        self.hi = hi
        dv = G.distance_from_vertex
        if a == b:
            self.near = [dv(w, a) for w in range(G.n)]
        else:
            self.near = [min(dv(w, a), dv(w, b)) for w in range(G.n)]


def point_targets(G: MetricGraph, p: GraphPoint) -> list[Target]:
    if p.kind == VERTEX:
        return [Target(G, -1, 0, 0, p, p)]
    return [Target(G, p.index, p.offset, p.offset, p, p)]


def path_targets(G: MetricGraph, g: Geodesic) -> list[Target]:
    if g.is_point:
        return point_targets(G, g.source)
    out = []
    for s in g.segments:
        lo, hi = s.lo, s.hi
        out.append(Target(G, s.edge, lo, hi, G.point_on_edge(s.edge, lo), G.point_on_edge(s.edge, hi)))
    return out


def path_sources(G: MetricGraph, g: Geodesic) -> list[tuple[int, Number, Number]]:
    if g.is_point:
        e, t = G.edge_coords(g.source)
        return [(e, t, t)]
    return [(s.edge, s.lo, s.hi) for s in g.segments]


def line_summary(G: MetricGraph, edge: int, targets: Sequence[Target]):
    """Minimal intercepts of the +1 and -1 lines, and the same-edge intervals."""
    e = G.edges[edge]
    P = M = None
    same = []
    L = e.length
    for tg in targets:
        pu = tg.near[e.u]
        mv = L + tg.near[e.v]
        if P is None or pu < P:
            P = pu
        if M is None or mv < M:
            M = mv
        if tg.edge == edge:
            same.append((tg.lo, tg.hi))
    return P, M, same


def envelope_max(lo: Number, hi: Number, P: Number, M: Number, same) -> tuple[Number, Number]:
    """Maximum over ``[lo, hi]`` of ``min(t + P, M - t, in-edge distances)``.

    Returns ``(value, t)``; ties keep the smallest ``t``.
    """
    if not same:
        t = half(M - P)
        t = lo if t < lo else hi if t > hi else t
        return min(t + P, M - t), t
    cuts = sorted({x for a, b in same for x in (a, b) if lo < x < hi})
    bounds = [lo, *cuts, hi]
    best = None
    best_t = lo
    for l, r in zip(bounds, bounds[1:]):
        p, m = P, M
        inside = False
        for a, b in same:
            if r <= a:
                if a < m:
                    m = a
            elif l >= b:
                if -b < p:
                    p = -b
            else:
                inside = True
                break
        if inside:
            val, t = 0, l
        else:
            t = half(m - p)
            t = l if t < l else r if t > r else t
            val = min(t + p, m - t)
        if best is None or val > best:
            best, best_t = val, t
    return best, best_t


def sup_distance(G: MetricGraph, sources, targets: Sequence[Target]) -> tuple[Number, int, Number]:
    """Sup over the source pieces of the distance to the union of ``targets``.

    Returns ``(value, source piece index, offset on that piece's edge)``.
    """
    best = None
    where = (0, sources[0][1])
    for i, (edge, lo, hi) in enumerate(sources):
        P, M, same = line_summary(G, edge, targets)
        val, t = envelope_max(lo, hi, P, M, same)
        if best is None or val > best:
            best, where = val, (i, t)
    return best, where[0], where[1]


@dataclass(frozen=True)
class GeodesicTriangle:
    """Three corners with a chosen geodesic for each side ``[xy], [yz], [zx]``."""

    corners: tuple
    sides: tuple
    is_cycle: bool = False


@dataclass(frozen=True)
class Thinness:
    value: Number
    side: int
    point: GraphPoint


def make_triangle(G: MetricGraph, xy: Geodesic, yz: Geodesic, zx: Geodesic) -> GeodesicTriangle:
    x, y, z = xy.source, yz.source, zx.source
    if xy.target != y or yz.target != z or zx.target != x:
        raise ValueError("sides do not close up into a triangle")
    return GeodesicTriangle((x, y, z), (xy, yz, zx), is_simple_closed(G, (xy, yz, zx)))


def triangle_thinness(G: MetricGraph, T: GeodesicTriangle) -> Thinness:
    """Exact thinness ``max_i sup_{p in side i} d(p, other sides)`` with a witness point."""
    targets = [path_targets(G, s) for s in T.sides]
    best = None
    for i, side in enumerate(T.sides):
        others = targets[(i + 1) % 3] + targets[(i + 2) % 3]
        sources = path_sources(G, side)
        val, k, t = sup_distance(G, sources, others)
        if best is None or val > best.value:
            best = Thinness(val, i, G.point_on_edge(sources[k][0], t))
    return best


def distance_to_pieces(G: MetricGraph, p: GraphPoint, paths: Sequence[Geodesic]) -> Number:
    """``d(p, union of paths)`` straight from point distances (no envelopes)."""
    best = None
    for g in paths:
        if g.is_point:
            cands = [point_distance(G, p, g.source)]
        else:
            cands = []
            for s in g.segments:
                if p.kind == INTERIOR and p.index == s.edge and s.lo <= p.offset <= s.hi:
                    cands.append(0)
                    continue
                if p.kind == VERTEX:
                    e = G.edges[s.edge]
                    if (p.index == e.u and s.lo == 0) or (p.index == e.v and s.hi == e.length):
                        cands.append(0)
                        continue
                for off in (s.lo, s.hi):
                    cands.append(point_distance(G, p, G.point_on_edge(s.edge, off)))
        m = min(cands)
        if best is None or m < best:
            best = m
    return best


def sample_path(G: MetricGraph, g: Geodesic, step: Number) -> list[GraphPoint]:
    """Points along ``g`` every ``step`` of arc length, plus all segment ends."""
    if g.is_point:
        return [g.source]
    pts = []
    for s in g.segments:
        n = 0
        while n * step < s.length:
            off = s.start + n * step if s.end >= s.start else s.start - n * step
            pts.append(G.point_on_edge(s.edge, off))
            n += 1
        pts.append(G.point_on_edge(s.edge, s.end))
    return pts


def sampled_thinness(G: MetricGraph, T: GeodesicTriangle, step: Number) -> Number:
    """Brute-force lower estimate of thinness from points spaced ``step`` apart."""
    best = 0
    for i, side in enumerate(T.sides):
        others = [T.sides[(i + 1) % 3], T.sides[(i + 2) % 3]]
        for p in sample_path(G, side, step):
            best = max(best, distance_to_pieces(G, p, others))
    return best


def _point_set(G: MetricGraph, g: Geodesic):
    verts = set()
    pieces = []
    if g.is_point:
        return {g.source}, pieces
    for s in g.segments:
        for off in (s.lo, s.hi):
            p = G.point_on_edge(s.edge, off)
            if p.kind == VERTEX:
                verts.add(p)
        pieces.append((s.edge, s.lo, s.hi))
    return verts, pieces


def _intersection(G: MetricGraph, a, b):
    """Intersection of two paths as a set of points, or None if it contains an arc."""
    va, pa = a
    vb, pb = b
    common = set(va & vb)
    for ea, la, ha in pa:
        for eb, lb, hb in pb:
            if ea != eb:
                continue
            lo, hi = max(la, lb), min(ha, hb)
            if lo < hi:
                return None
            if lo == hi:
                common.add(G.point_on_edge(ea, lo))
    return common


def is_simple_closed(G: MetricGraph, sides: Sequence[Geodesic]) -> bool:
    """Whether the union of the three sides is a simple closed curve."""
    corners = [s.source for s in sides]
    if len(set(corners)) < 3 or any(s.is_point for s in sides):
        return False
    sets = [_point_set(G, s) for s in sides]
    for i in range(3):
        j = (i + 1) % 3
        inter = _intersection(G, sets[i], sets[j])
        if inter is None or inter != {sides[i].target}:
            return False
    # Sides i and i+2 meet at corner i; covered by the loop with roles swapped.
    return True
