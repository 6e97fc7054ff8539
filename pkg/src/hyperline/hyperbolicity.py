"""Sharp hyperbolicity constants and the line-graph inequalities.

``delta_exact_uniform`` maximises exact triangle thinness over every
geodesic triangle whose corners are vertices or edge midpoints; for graphs
whose edges all have the same length that candidate set contains a
maximising triangle, so the result is the exact constant.  For arbitrary
lengths :func:`delta_lower_bound` runs the same search over a richer corner
set and only claims a lower bound.

All searches run on an integer-scaled copy of the graph: lengths and corner
offsets are multiplied by ``2 / g`` where ``g`` is their common unit, which
makes every envelope breakpoint an integer.  Results are scaled back to
exact Fractions before they are returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterable, Sequence

from hyperline.errors import (
    HypothesisViolated,
    NonUniformLengths,
    OracleBudgetExceeded,
)
from hyperline.metric_graph import (
    DEFAULT_GEODESIC_CAP,
    INTERIOR,
    Geodesic,
    GraphPoint,
    MetricGraph,
    Segment,
    common_unit,
    diameter,
    enumerate_geodesics,
    grid_points,
    half,
    pmv_points,
    point_distance,
)
from hyperline.thinness import (
    GeodesicTriangle,
    envelope_max,
    is_simple_closed,
    line_summary,
    path_sources,
    path_targets,
    triangle_thinness,
)

log = logging.getLogger(__name__)

EXACT_UNIFORM = "exact_uniform"
LOWER_BOUND = "lower_bound"
SAMPLED = "sampled"

DEFAULT_ORACLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class DeltaResult:
    value: Fraction
    mode: str
    triangle: GeodesicTriangle | None
    witness: GraphPoint | None
    corner_triples: int = 0
    triangles_evaluated: int = 0

    @property
    def counts(self) -> tuple[int, int]:
        return self.corner_triples, self.triangles_evaluated


class _Side:
    """A geodesic with its target pieces and per-target line summaries cached."""

    __slots__ = ("geo", "sources", "targets", "_summary")

    def __init__(self, G: MetricGraph, geo: Geodesic):
        self.geo = geo
        self.sources = path_sources(G, geo)
        self.targets = path_targets(G, geo)
        self._summary: dict[int, list] = {}

    def summary_against(self, G: MetricGraph, other: "_Side") -> list:
        key = id(other)
        got = self._summary.get(key)
        if got is None:
            got = [line_summary(G, edge, other.targets) for edge, _, _ in self.sources]
            self._summary[key] = got
        return got


def _side_sup(G: MetricGraph, side: _Side, a: _Side, b: _Side):
    sa = side.summary_against(G, a)
    sb = side.summary_against(G, b)
    best = None
    where = None
    for i, (edge, lo, hi) in enumerate(side.sources):
        P1, M1, s1 = sa[i]
        P2, M2, s2 = sb[i]
        P = P1 if P1 < P2 else P2
        M = M1 if M1 < M2 else M2
        same = s1 + s2 if s1 and s2 else (s1 or s2)
        val, t = envelope_max(lo, hi, P, M, same)
        if best is None or val > best:
            best, where = val, (edge, t)
    return best, where


def _triangle_value(G, s1: _Side, s2: _Side, s3: _Side):
    best, where = _side_sup(G, s1, s2, s3)
    side = 0
    for i, (a, b, c) in ((1, (s2, s3, s1)), (2, (s3, s1, s2))):
        val, w = _side_sup(G, a, b, c)
        if val > best:
            best, where, side = val, w, i
    return best, side, where


def _unscale_point(p: GraphPoint, factor) -> GraphPoint:
    if p.kind != INTERIOR:
        return p
    return GraphPoint(INTERIOR, p.index, Fraction(p.offset) / factor)


def _unscale_geodesic(g: Geodesic, factor) -> Geodesic:
    segs = tuple(Segment(s.edge, Fraction(s.start) / factor, Fraction(s.end) / factor) for s in g.segments)
    return Geodesic(
        _unscale_point(g.source, factor), _unscale_point(g.target, factor), segs, Fraction(g.length) / factor
    )


def search_corners(
    G: MetricGraph,
    corners: Iterable[GraphPoint],
    mode: str,
    geodesic_cap: int = DEFAULT_GEODESIC_CAP,
    cycles_only: bool = False,
) -> DeltaResult:
    """Max thinness over all geodesic triangles with corners in ``corners``.

    Corner triples run in lexicographic order and a triple only replaces the
    incumbent when strictly better, which makes the witness deterministic.
    Triples whose longest side is at most twice the incumbent are skipped:
    no point of a side is farther than half its length from the side's ends.
    """
    pts = sorted(set(corners))
    if G.m == 0:
        p = pts[0] if pts else GraphPoint.vertex(0)
        g = Geodesic(p, p, (), 0)
        return DeltaResult(Fraction(0), mode, GeodesicTriangle((p, p, p), (g, g, g)), p, 1, 1)
    unit = common_unit([e.length for e in G.edges] + [p.offset for p in pts])
    factor = 2 / unit
    H = G.scaled(factor)
    spts = [H.scale_point(p, factor) for p in pts]
    N = len(spts)
    dist = [[point_distance(H, p, q) for q in spts] for p in spts]
    stop_at = diameter(H) / 2

    sides: dict[tuple[int, int], list[_Side]] = {}

    def sides_for(i, j):
        got = sides.get((i, j))
        if got is None:
            got = [_Side(H, g) for g in enumerate_geodesics(H, spts[i], spts[j], geodesic_cap)]
            sides[(i, j)] = got
        return got

    best = None
    best_info = None
    triples = evaluated = 0
    for i, j, k in combinations_with_replacement(range(N), 3):
        triples += 1
        bound = half(max(dist[i][j], dist[j][k], dist[i][k]))
        if best is not None and bound <= best:
            continue
        for a, b, c in product(sides_for(i, j), sides_for(j, k), sides_for(i, k)):
            zx = c.geo.reversed()
            if cycles_only and not is_simple_closed(H, (a.geo, b.geo, zx)):
                continue
            evaluated += 1
            val, side, where = _triangle_value(H, a, b, c)
            if best is None or val > best:
                best = val
                best_info = (a.geo, b.geo, zx, side, where)
                if best >= bound:
                    break
        if best is not None and best >= stop_at:
            break
    if best is None:
        # Only reachable with cycles_only on graphs without cycle triangles.
        return DeltaResult(Fraction(0), mode, None, None, triples, evaluated)
    xy, yz, zx, _, (edge, t) = best_info
    sides_out = tuple(_unscale_geodesic(g, factor) for g in (xy, yz, zx))
    tri = GeodesicTriangle(
        tuple(s.source for s in sides_out), sides_out, is_simple_closed(G, sides_out)
    )
    witness = G.point_on_edge(edge, Fraction(t) / factor)
    log.debug("delta=%s after %d triples, %d triangles", best, triples, evaluated)
    return DeltaResult(Fraction(best) / factor, mode, tri, witness, triples, evaluated)


def delta_exact_uniform(
    G: MetricGraph, geodesic_cap: int = DEFAULT_GEODESIC_CAP, cycles_only: bool = False
) -> DeltaResult:
    """Exact hyperbolicity constant of a graph whose edges share one length.

    Raises NonUniformLengths otherwise (use :func:`delta_lower_bound`).
    """
    if G.m > 0 and G.uniform_length is None:
        raise NonUniformLengths("edge lengths differ; exact mode needs a uniform length (use lower-bound mode)")
    return search_corners(G, pmv_points(G), EXACT_UNIFORM, geodesic_cap, cycles_only)


def delta_lower_bound(
    G: MetricGraph, extra_net: Fraction | None = None, geodesic_cap: int = DEFAULT_GEODESIC_CAP
) -> DeltaResult:
    """Lower bound on the constant from corners in PMV(G) plus an optional grid."""
    corners = list(pmv_points(G))
    if extra_net is not None:
        corners += grid_points(G, Fraction(extra_net))
    return search_corners(G, corners, LOWER_BOUND, geodesic_cap)


def delta_sampling_oracle(
    G: MetricGraph,
    resolution: Fraction,
    geodesic_cap: int = DEFAULT_GEODESIC_CAP,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> Fraction:
    """Max exact thinness over corner triples drawn from a ``resolution`` grid."""
    corners = grid_points(G, Fraction(resolution))
    triples = comb(len(corners) + 2, 3)
    if triples > budget:
        raise OracleBudgetExceeded(f"{triples} corner triples exceed the budget of {budget}")
    return search_corners(G, corners, SAMPLED, geodesic_cap).value


def compute_delta(G: MetricGraph, mode: str = "auto", epsilon=None, geodesic_cap=DEFAULT_GEODESIC_CAP) -> DeltaResult:
    """Dispatch on a mode name: ``exact``, ``lower``, ``oracle`` or ``auto``."""
    if mode == "auto":
        mode = "exact" if G.m == 0 or G.uniform_length is not None else "lower"
    if mode == "exact":
        return delta_exact_uniform(G, geodesic_cap)
    if mode == "lower":
        return delta_lower_bound(G, epsilon, geodesic_cap)
    if mode == "oracle":
        corners = grid_points(G, Fraction(epsilon if epsilon is not None else Fraction(1, 4)))
        return search_corners(G, corners, SAMPLED, geodesic_cap)
    raise ValueError(f"unknown mode {mode!r}")


def upper_bound_report(G: MetricGraph) -> list[tuple[str, Fraction]]:
    out = [("half_diameter", diameter(G) / 2)]
    k = G.uniform_length
    if k is not None:
        out.append(("k_m_over_4", Fraction(k) * G.m / 4))
    if G.is_tree:
        out.append(("tree", Fraction(0)))
    return out


def quadrilateral_gamma_check(
    G: MetricGraph,
    x: GraphPoint,
    y: GraphPoint,
    u: GraphPoint,
    v: GraphPoint,
    delta_G,
    geodesic_cap: int = DEFAULT_GEODESIC_CAP,
) -> Fraction:
    """Worst ``sup_{a in [xu] u [uv] u [vy]} d(a, [xy]) - (2*delta_G + l_max)``.

    Taken over every choice of the four geodesics; a value <= 0 means the
    path stays within ``2*delta_G + l_max`` of ``[xy]``.
    """
    lmax = G.l_max
    if point_distance(G, x, u) > lmax or point_distance(G, v, y) > lmax:
        raise HypothesisViolated("legs [xu] and [vy] must not be longer than l_max")
    allowance = 2 * Fraction(delta_G) + lmax
    worst = None
    xys = [path_targets(G, g) for g in enumerate_geodesics(G, x, y, geodesic_cap)]
    legs = [enumerate_geodesics(G, a, b, geodesic_cap) for a, b in ((x, u), (u, v), (v, y))]
    for choice in product(*legs):
        sources = [s for g in choice for s in path_sources(G, g)]
        for targets in xys:
            val = None
            for edge, lo, hi in sources:
                P, M, same = line_summary(G, edge, targets)
                sv, _ = envelope_max(lo, hi, P, M, same)
                val = sv if val is None or sv > val else val
            excess = Fraction(val) - allowance
            worst = excess if worst is None or excess > worst else worst
    return worst


@dataclass
class InequalityRecord:
    name: str
    statement: str
    left: Fraction | None
    right: Fraction | None
    applicable: bool = True
    comparison_only: bool = False
    equality: bool | None = None
    equality_expected: bool | None = None

    @property
    def slack(self) -> Fraction | None:
        if not self.applicable:
            return None
        return self.right - self.left

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return self.slack >= 0

    @property
    def characterization_ok(self) -> bool | None:
        if self.equality is None or self.equality_expected is None:
            return None
        return self.equality == self.equality_expected


@dataclass
class InequalityReport:
    delta_G: DeltaResult
    delta_L: DeltaResult
    exact: bool
    records: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.records if r.applicable and not r.comparison_only)

    @property
    def characterizations_ok(self) -> bool:
        return all(r.characterization_ok is not False for r in self.records)

    def record(self, name: str) -> InequalityRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)


def inequality_records(G: MetricGraph, dG: Fraction, dL: Fraction) -> list[InequalityRecord]:
    """Every inequality relating the constants of ``G`` and of its line graph."""
    lmax = Fraction(G.l_max)
    k = G.uniform_length
    uniform = k is not None
    k = Fraction(k) if uniform else None
    cyc = G.is_cycle_graph
    recs = [
        InequalityRecord("lower", "delta(G) <= delta(L(G))", dG, dL, equality=dG == dL),
        InequalityRecord("upper_lmax", "delta(L(G)) <= 5 delta(G) + 3 l_max", dL, 5 * dG + 3 * lmax),
        InequalityRecord("half_diameter", "delta(G) <= diam(G)/2", dG, diameter(G) / 2),
    ]
    if uniform:
        sq = sum(d * d for d in G.degrees)
        edge_bound = k * G.m / 4
        deg_bound = G.n * k * G.max_degree * (G.max_degree - 1) / 8
        sum_bound = k * sq / 8
        recs += [
            InequalityRecord("upper_uniform", "delta(L(G)) <= 5 delta(G) + 5k/2", dL, 5 * dG + 5 * k / 2),
            InequalityRecord(
                "edge_count", "delta(G) <= k m / 4", dG, edge_bound,
                equality=dG == edge_bound, equality_expected=cyc,
            ),
            InequalityRecord(
                "max_degree", "delta(L(G)) <= n k D (D-1) / 8", dL, deg_bound,
                equality=dL == deg_bound, equality_expected=cyc,
            ),
            InequalityRecord(
                "degree_sum", "delta(L(G)) + delta(G) <= (k/8) sum deg^2", dL + dG, sum_bound,
                equality=dL + dG == sum_bound, equality_expected=cyc,
            ),
        ]
    else:
        for name, st in (
            ("upper_uniform", "delta(L(G)) <= 5 delta(G) + 5k/2"),
            ("edge_count", "delta(G) <= k m / 4"),
            ("max_degree", "delta(L(G)) <= n k D (D-1) / 8"),
            ("degree_sum", "delta(L(G)) + delta(G) <= (k/8) sum deg^2"),
        ):
            recs.append(InequalityRecord(name, st, None, None, applicable=False))
    unit = uniform and k == 1
    recs += [
        InequalityRecord(
            "prior_upper", "delta(L(G)) <= 12 delta(G) + 18", dL if unit else None,
            12 * dG + 18 if unit else None, applicable=unit, comparison_only=True,
        ),
        InequalityRecord(
            "prior_lower", "delta(G)/12 - 3/4 <= delta(L(G))", dG / 12 - Fraction(3, 4) if unit else None,
            dL if unit else None, applicable=unit, comparison_only=True,
        ),
    ]
    return recs


def verify_line_graph_inequalities(
    G: MetricGraph,
    mode: str = "auto",
    geodesic_cap: int = DEFAULT_GEODESIC_CAP,
    extra_net=None,
) -> InequalityReport:
    """Compute both constants and check every inequality with exact slack.

    In ``exact`` mode both constants are exact (uniform lengths required).
    In ``lower`` mode they are lower bounds and the report is not a proof
    either way; ``exact`` is False on such reports.
    """
    from hyperline.line_graph import build_line_graph

    if mode == "auto":
        mode = "exact" if G.uniform_length is not None else "lower"
    corr = build_line_graph(G)
    if mode == "exact":
        dG = delta_exact_uniform(G, geodesic_cap)
        dL = delta_exact_uniform(corr.L, geodesic_cap)
    elif mode == "lower":
        dG = delta_lower_bound(G, extra_net, geodesic_cap)
        dL = delta_lower_bound(corr.L, extra_net, geodesic_cap)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return InequalityReport(dG, dL, mode == "exact", inequality_records(G, dG.value, dL.value))


__all__ = [
    "DeltaResult",
    "GeodesicTriangle",
    "InequalityRecord",
    "InequalityReport",
    "compute_delta",
    "delta_exact_uniform",
    "delta_lower_bound",
    "delta_sampling_oracle",
    "inequality_records",
    "quadrilateral_gamma_check",
    "search_corners",
    "triangle_thinness",
    "upper_bound_report",
    "verify_line_graph_inequalities",
]
