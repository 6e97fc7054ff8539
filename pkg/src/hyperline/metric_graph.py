"""Finite metric graphs with exact rational edge lengths.

Every edge ``[u, v]`` of length ``l`` is identified with the interval
``[0, l]``, offsets being measured from ``u``.  A point of the graph is a
vertex or an interior point of an edge; distances between arbitrary points
reduce to the all-pairs vertex table plus the two offsets.

Lengths are stored as :class:`fractions.Fraction` by :func:`build_graph`.
:meth:`MetricGraph.scaled` produces copies with plain ``int`` lengths, which
the hyperbolicity code uses internally for speed; every function here is
written against generic exact numbers so both representations work.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Hashable, Iterable, Iterator, Sequence, Union

from hyperline.errors import (
    CapExceeded,
    Disconnected,
    DuplicateEdge,
    InvalidPoint,
    LoopEdge,
    NonpositiveLength,
)

Number = Union[int, Fraction]

DEFAULT_GEODESIC_CAP = 10_000

VERTEX = 0
INTERIOR = 1


def as_rational(value) -> Fraction:
    """Parse ``value`` (int, Fraction or a string such as ``"3/2"``) exactly.

    Floats are refused: they would silently smuggle binary rounding into
    quantities that are meant to be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def half(x: Number) -> Number:
    """Exact ``x / 2`` that keeps even ints as ints."""
    if isinstance(x, int):
        q, r = divmod(x, 2)
        return q if r == 0 else Fraction(x, 2)
    return x / 2


@dataclass(frozen=True, order=True)
class GraphPoint:
    """A vertex (``kind == VERTEX``) or an interior edge point.

    For vertices ``index`` is the vertex index and ``offset`` is 0; for
    interior points ``index`` is the edge index and ``0 < offset < length``.
    Ordering puts vertices first, then interior points by edge and offset.
    """

    kind: int
    index: int
    offset: Number = 0

    @classmethod
    def vertex(cls, index: int) -> "GraphPoint":
        return cls(VERTEX, index, 0)

    @property
    def is_vertex(self) -> bool:
        return self.kind == VERTEX


@dataclass(frozen=True)
class Edge:
    index: int
    u: int
    v: int
    length: Number

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class Segment:
    """Traversal of part of an edge from offset ``start`` to ``end``."""

    edge: int
    start: Number
    end: Number

    @property
    def lo(self) -> Number:
        return min(self.start, self.end)

    @property
    def hi(self) -> Number:
        return max(self.start, self.end)

    @property
    def length(self) -> Number:
        return abs(self.end - self.start)

    def reversed(self) -> "Segment":
        return Segment(self.edge, self.end, self.start)


@dataclass(frozen=True)
class Geodesic:
    """A shortest path, stored as a chain of edge segments.

    A geodesic between a point and itself has no segments.
    """

    source: GraphPoint
    target: GraphPoint
    segments: tuple
    length: Number

    def reversed(self) -> "Geodesic":
        segs = tuple(s.reversed() for s in reversed(self.segments))
        return Geodesic(self.target, self.source, segs, self.length)

    @property
    def is_point(self) -> bool:
        return not self.segments


class MetricGraph:
    """Immutable finite simple connected graph with positive edge lengths.

    Use :func:`build_graph` to construct one from labels; the constructor
    trusts its input.
    """

    def __init__(self, labels: Sequence[Hashable], edges: Sequence[Edge], dist=None):
        self.labels = tuple(labels)
        self.edges = tuple(edges)
        self.index_of = {label: i for i, label in enumerate(self.labels)}
        incident: list[list[int]] = [[] for _ in self.labels]
        self.edge_between: dict[tuple[int, int], int] = {}
        for e in self.edges:
            incident[e.u].append(e.index)
            incident[e.v].append(e.index)
            self.edge_between[(e.u, e.v)] = e.index
            self.edge_between[(e.v, e.u)] = e.index
        self.incident = tuple(tuple(x) for x in incident)
        self.dist = dist if dist is not None else _all_pairs(len(self.labels), self.edges, self.incident)
        self._next_hops: dict[int, list[list[tuple[int, int]]]] = {}

    # -- basic invariants -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, w: int) -> int:
        return len(self.incident[w])

    @property
    def degrees(self) -> list[int]:
        return [len(x) for x in self.incident]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def l_max(self) -> Number:
        return max((e.length for e in self.edges), default=0)

    @property
    def uniform_length(self) -> Number | None:
        """The common edge length ``k``, or ``None`` when lengths differ."""
        lengths = {e.length for e in self.edges}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def is_tree(self) -> bool:
        return self.m == self.n - 1

    @property
    def is_cycle_graph(self) -> bool:
        return self.n >= 3 and self.m == self.n and all(d == 2 for d in self.degrees)

    def __repr__(self) -> str:
        return f"MetricGraph(n={self.n}, m={self.m}, l_max={format_rational(self.l_max)})"

    # -- points -----------------------------------------------------------

    def vertex(self, label) -> GraphPoint:
        try:
            return GraphPoint.vertex(self.index_of[label])
        except KeyError:
            raise InvalidPoint(f"unknown vertex {label!r}") from None

    def point_on_edge(self, edge: int, offset: Number) -> GraphPoint:
        """Canonical point at ``offset`` from the first endpoint of ``edge``."""
        e = self.edges[edge]
        if offset == 0:
            return GraphPoint.vertex(e.u)
        if offset == e.length:
            return GraphPoint.vertex(e.v)
        if not 0 < offset < e.length:
            raise InvalidPoint(f"offset {offset} outside edge {edge} of length {e.length}")
        return GraphPoint(INTERIOR, edge, offset)

    def point_between(self, u, v, offset_from_u) -> GraphPoint:
        """Point on the edge joining labels ``u`` and ``v``, measured from ``u``."""
        iu, iv = self.index_of[u], self.index_of[v]
        try:
            e = self.edges[self.edge_between[(iu, iv)]]
        except KeyError:
            raise InvalidPoint(f"no edge between {u!r} and {v!r}") from None
        offset = as_rational(offset_from_u) if isinstance(offset_from_u, str) else offset_from_u
        if e.u != iu:
            offset = e.length - offset
        return self.point_on_edge(e.index, offset)

    def midpoint(self, edge: int) -> GraphPoint:
        return GraphPoint(INTERIOR, edge, half(self.edges[edge].length))

    def edge_coords(self, p: GraphPoint) -> tuple[int, Number]:
        """Some ``(edge, offset)`` locating ``p``; vertices use their first edge."""
        if p.kind == INTERIOR:
            return p.index, p.offset
        e = self.edges[self.incident[p.index][0]]
        return e.index, (0 if e.u == p.index else e.length)

    def check_point(self, p: GraphPoint) -> None:
        if p.kind == VERTEX:
            if not 0 <= p.index < self.n:
                raise InvalidPoint(f"vertex index {p.index} out of range")
        else:
            if not 0 <= p.index < self.m:
                raise InvalidPoint(f"edge index {p.index} out of range")
            if not 0 < p.offset < self.edges[p.index].length:
                raise InvalidPoint(f"offset {p.offset} not interior to edge {p.index}")

    def describe(self, p: GraphPoint) -> str:
        if p.kind == VERTEX:
            return str(self.labels[p.index])
        e = self.edges[p.index]
        return f"{self.labels[e.u]}-{self.labels[e.v]}@{format_rational(p.offset)}"

    def distance_from_vertex(self, w: int, p: GraphPoint) -> Number:
        row = self.dist[w]
        if p.kind == VERTEX:
            return row[p.index]
        e = self.edges[p.index]
        return min(row[e.u] + p.offset, row[e.v] + e.length - p.offset)

    # -- derived graphs ---------------------------------------------------

    def scaled(self, factor: Number) -> "MetricGraph":
        """Copy with every length multiplied by ``factor`` (ints when integral)."""

        def conv(x):
            y = Fraction(x) * factor
            return y.numerator if y.denominator == 1 else y

        edges = [Edge(e.index, e.u, e.v, conv(e.length)) for e in self.edges]
        dist = [[conv(x) for x in row] for row in self.dist]
        return MetricGraph(self.labels, edges, dist)

    def scale_point(self, p: GraphPoint, factor: Number) -> GraphPoint:
        if p.kind == VERTEX:
            return p
        y = Fraction(p.offset) * factor
        return GraphPoint(INTERIOR, p.index, y.numerator if y.denominator == 1 else y)

    # -- shortest-path DAG ------------------------------------------------

    def next_hops(self, target: int) -> list[list[tuple[int, int]]]:
        """For every vertex, the (edge, neighbour) steps that start a shortest path to ``target``."""
        hops = self._next_hops.get(target)
        if hops is None:
            col = [row[target] for row in self.dist]
            hops = []
            for x in range(self.n):
                step = []
                for ei in self.incident[x]:
                    e = self.edges[ei]
                    y = e.other(x)
                    if e.length + col[y] == col[x]:
                        step.append((ei, y))
                hops.append(step)
            self._next_hops[target] = hops
        return hops


def _all_pairs(n: int, edges: Sequence[Edge], incident) -> list[list]:
    # Dijkstra from every vertex; exact arithmetic, so no tolerance anywhere.
    dist = []
    for s in range(n):
        d: list = [None] * n
        d[s] = 0
        heap = [(0, s)]
        done = [False] * n
        while heap:
            dx, x = heapq.heappop(heap)
            if done[x]:
                continue
            done[x] = True
            for ei in incident[x]:
                e = edges[ei]
                y = e.other(x)
                nd = dx + e.length
                if d[y] is None or nd < d[y]:
                    d[y] = nd
                    heapq.heappush(heap, (nd, y))
        dist.append(d)
    return dist


def build_graph(vertex_labels: Iterable[Hashable], weighted_edges: Iterable) -> MetricGraph:
    """Validate and build a :class:`MetricGraph`.

    ``weighted_edges`` holds ``(u_label, v_label, length)`` triples; lengths
    may be ints, Fractions or rational strings.

    Raises LoopEdge, DuplicateEdge, NonpositiveLength or Disconnected naming
    the offending element.
    """
    labels = list(vertex_labels)
    index_of: dict = {}
    for label in labels:
        if label in index_of:
            raise DuplicateEdge(f"vertex label {label!r} listed twice")
        index_of[label] = len(index_of)
    seen: dict[frozenset, int] = {}
    edges = []
    for pos, (a, b, length) in enumerate(weighted_edges):
        for label in (a, b):
            if label not in index_of:
                raise InvalidPoint(f"edge {pos}: unknown vertex {label!r}")
        if a == b:
            raise LoopEdge(f"edge {pos}: loop at vertex {a!r}")
        key = frozenset((a, b))
        if key in seen:
            raise DuplicateEdge(f"edge {pos}: {a!r}-{b!r} duplicates edge {seen[key]}")
        seen[key] = pos
        length = as_rational(length)
        if length <= 0:
            raise NonpositiveLength(f"edge {pos}: {a!r}-{b!r} has length {length}")
        edges.append(Edge(len(edges), index_of[a], index_of[b], length))
    if not labels:
        raise Disconnected("graph has no vertices")
    g = MetricGraph(labels, edges)
    unreachable = [labels[i] for i, d in enumerate(g.dist[0]) if d is None]
    if unreachable:
        raise Disconnected(f"vertex {unreachable[0]!r} is not reachable from {labels[0]!r}")
    return g


def point_distance(G: MetricGraph, p: GraphPoint, q: GraphPoint) -> Number:
    """Exact shortest-path distance between two points of ``G``."""
    if p.kind == VERTEX:
        return G.distance_from_vertex(p.index, q)
    if q.kind == VERTEX:
        return G.distance_from_vertex(q.index, p)
    e = G.edges[p.index]
    t = p.offset
    best = min(t + G.distance_from_vertex(e.u, q), e.length - t + G.distance_from_vertex(e.v, q))
    if q.index == p.index:
        best = min(best, abs(t - q.offset))
    return best


def _exits(G: MetricGraph, p: GraphPoint):
    if p.kind == VERTEX:
        return [(p.index, 0, None)]
    e = G.edges[p.index]
    t = p.offset
    return [(e.u, t, Segment(e.index, t, 0)), (e.v, e.length - t, Segment(e.index, t, e.length))]


def _vertex_paths(G: MetricGraph, a: int, b: int) -> Iterator[list[Segment]]:
    hops = G.next_hops(b)
    stack: list[tuple[int, list[Segment]]] = [(a, [])]
    # Depth-first so paths come out in a deterministic order.
    while stack:
        x, segs = stack.pop()
        if x == b:
            yield segs
            continue
        for ei, y in reversed(hops[x]):
            e = G.edges[ei]
            seg = Segment(ei, 0, e.length) if e.u == x else Segment(ei, e.length, 0)
            stack.append((y, segs + [seg]))


def enumerate_geodesics(
    G: MetricGraph, p: GraphPoint, q: GraphPoint, cap: int = DEFAULT_GEODESIC_CAP
) -> list[Geodesic]:
    """Every geodesic from ``p`` to ``q``.

    Raises CapExceeded rather than truncating when more than ``cap`` exist.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if p == q:
        return [Geodesic(p, q, (), 0)]
    d = point_distance(G, p, q)
    found: list[Geodesic] = []

    def emit(segs):
        if len(found) >= cap:
            raise CapExceeded(cap, (G.describe(p), G.describe(q)))
        found.append(Geodesic(p, q, tuple(segs), d))

    if p.kind == INTERIOR and q.kind == INTERIOR and p.index == q.index:
        if abs(p.offset - q.offset) == d:
            emit([Segment(p.index, p.offset, q.offset)])
    entries = [(w, c, s.reversed() if s else None) for w, c, s in _exits(G, q)]
    for (a, c1, s1), (b, c2, s2) in product(_exits(G, p), entries):
        if c1 + G.dist[a][b] + c2 != d:
            continue
        for mid in _vertex_paths(G, a, b):
            segs = ([s1] if s1 else []) + mid + ([s2] if s2 else [])
            emit(segs)
    return found


@dataclass(frozen=True)
class PMVSet:
    """Vertices together with the midpoints of all edges."""

    vertices: tuple
    midpoints: tuple

    @property
    def points(self) -> tuple:
        return self.vertices + self.midpoints

    def __len__(self) -> int:
        return len(self.vertices) + len(self.midpoints)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self.vertices or p in self.midpoints


def pmv_points(G: MetricGraph) -> PMVSet:
    return PMVSet(
        tuple(GraphPoint.vertex(i) for i in range(G.n)),
        tuple(G.midpoint(e.index) for e in G.edges),
    )


def grid_points(G: MetricGraph, resolution: Number) -> list[GraphPoint]:
    """Vertices plus the points at multiples of ``resolution`` inside each edge."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    pts = [GraphPoint.vertex(i) for i in range(G.n)]
    for e in G.edges:
        k = 1
        while k * resolution < e.length:
            pts.append(GraphPoint(INTERIOR, e.index, k * resolution))
            k += 1
    return pts


def max_of_min_lines(lines: Sequence[tuple[int, Number]], lo: Number, hi: Number) -> tuple[Number, Number]:
    """Maximise ``min(slope * t + icpt)`` over ``t`` in ``[lo, hi]``.

    The lower envelope of lines is concave, so its maximum sits at an end of
    the interval or where two lines cross.  Returns ``(value, t)``.
    """

    def f(t):
        return min(s * t + c for s, c in lines)

    cands = {lo, hi}
    for (s1, c1), (s2, c2) in product(lines, lines):
        if s1 > s2:
            t = Fraction(c2 - c1) / (s1 - s2)
            if lo < t < hi:
                cands.add(t)
    best = max(sorted(cands), key=f)
    return f(best), best


def diameter(G: MetricGraph) -> Number:
    """Supremum of the distance over all pairs of points of ``G``."""
    if G.m == 0:
        return 0
    best = 0
    D = G.dist
    for e in G.edges:
        L = e.length
        # Both points on e: the far point sits (D[u][v] + L)/2 away around the cycle.
        best = max(best, Fraction(D[e.u][e.v] + L, 2))
        for f in G.edges:
            if f.index == e.index:
                continue
            # For p fixed off f, the farthest point of f is at (d(p,fu) + d(p,fv) + Lf)/2.
            a1, a2 = D[e.u][f.u], D[e.v][f.u]
            b1, b2 = D[e.u][f.v], D[e.v][f.v]
            lines = [
                (2, a1 + b1),
                (0, L + a1 + b2),
                (0, L + a2 + b1),
                (-2, 2 * L + a2 + b2),
            ]
            value, _ = max_of_min_lines(lines, 0, L)
            best = max(best, Fraction(value + f.length, 2))
    return best


def common_unit(values: Iterable[Number]) -> Fraction:
    """Largest rational ``g`` such that every value is an integer multiple of ``g``."""
    fr = [Fraction(v) for v in values if v != 0]
    if not fr:
        return Fraction(1)
    den = math.lcm(*(f.denominator for f in fr))
    num = math.gcd(*(f.numerator * (den // f.denominator) for f in fr))
    return Fraction(num, den)
