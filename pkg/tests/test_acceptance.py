"""Acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL`` line; pytest prints them in
its terminal summary.  Run the file directly (``python tests/test_acceptance.py``)
for just the summary lines, or through pytest with ``-m acceptance``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperline.families import generate, parse_family  # noqa: E402
from hyperline.hyperbolicity import (  # noqa: E402
    delta_exact_uniform,
    delta_lower_bound,
    delta_sampling_oracle,
    verify_line_graph_inequalities,
)
from hyperline.line_graph import build_line_graph, decompose_geodesic_image, verify_quasi_isometry  # noqa: E402
from hyperline.metric_graph import build_graph, enumerate_geodesics, grid_points, point_distance  # noqa: E402
from hyperline.thinness import make_triangle, sampled_thinness, triangle_thinness  # noqa: E402

pytestmark = pytest.mark.acceptance

F = Fraction


def g(text):
    return generate(parse_family(text))


# Collected here and printed by the terminal-summary hook in conftest.py.
RESULTS: dict[int, str] = {}


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _list(items) -> str:
    return f" {items}" if items else ""


def sweep_graphs():
    """The 50 seeded random connected unit-length graphs with n <= 7."""
    out = []
    for seed in range(50):
        n = random.Random(seed).randint(3, 7)
        out.append(g(f"random_connected:n={n},p=1/2,seed={seed}"))
    return out


def criterion_1():
    start = time.perf_counter()
    got = {n: delta_exact_uniform(g(f"cycle:n={n},k=1")).value for n in range(3, 9)}
    secs = time.perf_counter() - start
    ok = all(v == F(n, 4) for n, v in got.items()) and secs < 60
    return ok, f"delta(C_n) for n=3..8: {[str(v) for v in got.values()]} in {secs:.2f}s"


def criterion_2():
    values = []
    for seed in range(20):
        n = random.Random(1000 + seed).randint(2, 12)
        values.append(delta_exact_uniform(g(f"random_tree:n={n},seed={seed}")).value)
    return all(v == 0 for v in values), f"20 random trees, distinct values {sorted(set(map(str, values)))}"


def criterion_3():
    slacks = {}
    for n in range(3, 9):
        rep = verify_line_graph_inequalities(g(f"cycle:n={n},k=1"), "exact")
        slacks[n] = (rep.delta_G.value, rep.delta_L.value, rep.record("lower").slack)
    ok = all(dG == dL == F(n, 4) and s == 0 for n, (dG, dL, s) in slacks.items())
    return ok, f"first-inequality slack on C_3..C_8: {[str(s) for _, _, s in slacks.values()]}"


_SWEEP = {}


def _sweep_reports():
    if not _SWEEP:
        _SWEEP["reports"] = [(G, verify_line_graph_inequalities(G, "exact")) for G in sweep_graphs()]
    return _SWEEP["reports"]


def criterion_4():
    bad = []
    for G, rep in _sweep_reports():
        dG, dL = rep.delta_G.value, rep.delta_L.value
        if not (dG <= dL <= 5 * dG + F(5, 2)):
            bad.append((G.n, G.m, dG, dL))
    return not bad, f"50 graphs, {len(bad)} violations of delta(G) <= delta(L) <= 5 delta(G) + 5/2" + _list(bad)


def criterion_5():
    reports = _sweep_reports() + [
        (G, verify_line_graph_inequalities(G, "exact")) for G in (g(f"cycle:n={n}") for n in range(3, 9))
    ]
    violations, mismatches, equalities, cycles = 0, 0, 0, 0
    for G, rep in reports:
        cycles += G.is_cycle_graph
        for name in ("max_degree", "degree_sum"):
            r = rep.record(name)
            violations += not r.holds
            mismatches += not r.characterization_ok
            equalities += bool(r.equality)
    ok = violations == 0 and mismatches == 0
    return ok, (
        f"{len(reports)} graphs ({cycles} cycles): {violations} violations, {equalities} equalities,"
        f" {mismatches} equality/cycle mismatches"
    )


def qi_graphs():
    names = [
        "cycle:n=4", "cycle:n=5", "cycle:n=6,k=2",
        "star:m=3", "star:m=4",
        "chorded_cycle:n=5", "chorded_cycle:n=6",
        "random_connected:n=5,p=1/2,seed=1", "random_connected:n=6,p=1/2,seed=2",
    ]
    graphs = [(s, g(s)) for s in names]
    graphs.append(("non-uniform triangle", build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])))
    return graphs


def criterion_6():
    worst = [F(-10**9)] * 3
    failed = []
    for name, G in qi_graphs():
        rep = verify_quasi_isometry(build_line_graph(G))
        ok = (
            rep.max_lipschitz_excess <= 0
            and rep.max_reciprocal_excess <= 0
            and rep.beta == 2 * G.l_max
            and rep.fullness_radius <= F(G.l_max) / 2
        )
        if not ok:
            failed.append(name)
        worst = [max(worst[0], rep.max_lipschitz_excess), max(worst[1], rep.max_reciprocal_excess),
                 max(worst[2], rep.fullness_radius - F(G.l_max) / 2)]
    return not failed, (
        f"10 graphs, worst lipschitz excess {worst[0]}, reciprocal excess {worst[1]},"
        f" fullness minus l_max/2 {worst[2]}" + _list(failed)
    )


def criterion_7():
    rows, findings = [], []
    for n in (6, 7, 8):
        G = g(f"chorded_cycle:n={n},k=1")
        L = build_line_graph(G).L
        eg, el = delta_exact_uniform(G), delta_exact_uniform(L)
        og, ol = delta_sampling_oracle(G, F(1, 4)), delta_sampling_oracle(L, F(1, 4))
        rows.append(f"n={n}: G {eg.value}, L {el.value} (oracle {og}, {ol})")
        if not (eg.value == el.value == og == ol == F(n, 4)):
            findings.append(
                f"n={n} discrepancy; witnesses G {[G.describe(p) for p in eg.triangle.corners]},"
                f" L {[L.describe(p) for p in el.triangle.corners]}"
            )
    return not findings, "; ".join(rows + findings)


def triangle_graphs():
    return [
        g("cycle:n=5"), g("complete:n=4"), g("chorded_cycle:n=6"), g("star:m=4,k=2"),
        g("random_connected:n=6,p=1/2,seed=3"), g("complete_bipartite:a=2,b=3"),
        build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)]),
        build_graph("abcd", [("a", "b", F(1, 2)), ("b", "c", F(3, 2)), ("c", "d", 1), ("d", "a", 2), ("a", "c", 1)]),
    ]


def criterion_8():
    eps = F(1, 8)
    rng = random.Random(8)
    graphs = triangle_graphs()
    worst_gap, bad = F(0), []
    for i in range(100):
        G = rng.choice(graphs)
        # Off-grid corners put envelope breakpoints between sample points.
        pts = grid_points(G, rng.choice([F(1, 4), F(1, 3), F(1, 5)]))
        x, y, z = (rng.choice(pts) for _ in range(3))
        sides = [rng.choice(enumerate_geodesics(G, a, b)) for a, b in ((x, y), (y, z), (z, x))]
        T = make_triangle(G, *sides)
        gap = triangle_thinness(G, T).value - sampled_thinness(G, T, eps)
        worst_gap = max(worst_gap, gap)
        if not 0 <= gap <= eps:
            bad.append((i, gap))
    return not bad, f"100 triangles, max exact - sampled = {worst_gap} (tolerance {eps})" + _list(bad)


def criterion_9():
    G = build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])
    v = delta_lower_bound(G).value
    return v == F(3, 2), f"lower bound on cycle (1,2,3) = {v}"


def criterion_10():
    rng = random.Random(10)
    graphs = [g("cycle:n=6"), g("complete:n=4,k=2"), g("chorded_cycle:n=7"), g("star:m=4"),
              g("random_connected:n=6,p=1/2,seed=4"), g("complete_bipartite:a=2,b=3,k=3")]
    corrs = [build_line_graph(G) for G in graphs]
    worst, bad = F(0), []
    for i in range(50):
        corr = rng.choice(corrs)
        k = corr.G.uniform_length
        pts = corr.pmlv_points()
        gamma = rng.choice(enumerate_geodesics(corr.L, rng.choice(pts), rng.choice(pts)))
        g1, g2, g3 = decompose_geodesic_image(corr, gamma)
        middle_ok = g2.length == point_distance(corr.G, g2.source, g2.target)
        worst = max(worst, g1.length / k, g3.length / k)
        if not (g1.length <= k / 2 and g3.length <= k / 2 and middle_ok):
            bad.append(i)
    return not bad, f"50 geodesics, max end piece = {worst}*k (bound 1/2), middle pieces geodesic" + _list(bad)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    report(number, ok, detail)


if __name__ == "__main__":
    failures = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        print(f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}")
        failures += not ok
    raise SystemExit(1 if failures else 0)
