import random
from fractions import Fraction

import pytest
from conftest import points_of, small_graphs
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_delta

from hyperline.errors import HypothesisViolated, NonUniformLengths, OracleBudgetExceeded
from hyperline.families import generate, parse_family
from hyperline.hyperbolicity import (
    EXACT_UNIFORM,
    LOWER_BOUND,
    compute_delta,
    delta_exact_uniform,
    delta_lower_bound,
    delta_sampling_oracle,
    quadrilateral_gamma_check,
    upper_bound_report,
    verify_line_graph_inequalities,
)
from hyperline.line_graph import build_line_graph
from hyperline.metric_graph import (
    build_graph,
    diameter,
    enumerate_geodesics,
    grid_points,
    point_distance,
)
from hyperline.thinness import (
    GeodesicTriangle,
    distance_to_pieces,
    make_triangle,
    sample_path,
    sampled_thinness,
    triangle_thinness,
)

F = Fraction


def g(text):
    return generate(parse_family(text))


def triangle(G, x, y, z, pick=0):
    sides = [enumerate_geodesics(G, a, b) for a, b in ((x, y), (y, z), (z, x))]
    return make_triangle(G, *(s[pick % len(s)] for s in sides))


# --- triangle_thinness -------------------------------------------------------


def test_collapsed_bigon_is_zero():
    G = g("cycle:n=6")
    side = enumerate_geodesics(G, G.vertex(0), G.vertex(2))[0]
    point = enumerate_geodesics(G, G.vertex(0), G.vertex(0))[0]
    T = GeodesicTriangle((G.vertex(0), G.vertex(2), G.vertex(0)), (side, side.reversed(), point))
    assert triangle_thinness(G, T).value == 0


@pytest.mark.parametrize("n, expected", [(4, 1), (6, F(3, 2))])
def test_antipodal_bigon(n, expected):
    G = g(f"cycle:n={n}")
    x, y = G.vertex(0), G.vertex(n // 2)
    arcs = enumerate_geodesics(G, x, y)
    assert len(arcs) == 2
    stay = enumerate_geodesics(G, x, x)[0]
    T = GeodesicTriangle((x, y, x), (arcs[0], arcs[1].reversed(), stay))
    th = triangle_thinness(G, T)
    assert th.value == expected
    assert sampled_thinness(G, T, F(1, 8)) == expected


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_envelope_matches_sampling(data):
    G = data.draw(small_graphs(max_n=5))
    x, y, z = (data.draw(points_of(G)) for _ in range(3))
    T = triangle(G, x, y, z, data.draw(st.integers(0, 5)))
    step = F(1, 8)
    exact = triangle_thinness(G, T)
    sampled = sampled_thinness(G, T, step)
    assert 0 <= exact.value - sampled <= step / 2
    assert exact.value <= diameter(G) / 2


def test_cycle_flag():
    G = g("cycle:n=6")
    T = triangle(G, G.vertex(0), G.vertex(2), G.vertex(4))
    assert T.is_cycle
    assert not triangle(G, G.vertex(0), G.vertex(1), G.vertex(2)).is_cycle


# --- delta_exact_uniform -----------------------------------------------------


@pytest.mark.parametrize(
    "family, expected",
    [
        ("cycle:n=5", F(5, 4)),
        ("path:n=6", 0),
        ("star:m=4", 0),
        ("complete:n=4", 1),
        ("cycle:n=4,k=3", 3),
    ],
)
def test_exact_examples(family, expected):
    res = delta_exact_uniform(g(family))
    assert res.value == expected and res.mode == EXACT_UNIFORM


def test_exact_rejects_non_uniform():
    G = build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])
    with pytest.raises(NonUniformLengths):
        delta_exact_uniform(G)


@pytest.mark.parametrize("family", ["complete:n=4", "cycle:n=5", "complete_bipartite:a=2,b=3", "chorded_cycle:n=5"])
def test_exact_against_brute_force(family):
    G = g(family)
    step = F(1, 8)
    brute = brute_delta(G, F(1, 2), step)
    exact = delta_exact_uniform(G).value
    assert 0 <= exact - brute <= step / 2


@settings(max_examples=12, deadline=None)
@given(small_graphs(max_n=5, uniform=True, lengths=(1,)))
def test_exact_against_brute_force_random(G):
    step = F(1, 8)
    brute = brute_delta(G, F(1, 2), step)
    exact = delta_exact_uniform(G).value
    assert 0 <= exact - brute <= step / 2


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_n=6, uniform=True))
def test_witness_reproduces_value(G):
    res = delta_exact_uniform(G)
    if res.value == 0:
        return
    th = triangle_thinness(G, res.triangle)
    assert th.value == res.value
    assert res.value <= diameter(G) / 2
    for side in res.triangle.sides:
        assert side.length == point_distance(G, side.source, side.target)


def test_cycles_only_agrees():
    for fam in ("cycle:n=6", "complete:n=4", "chorded_cycle:n=6"):
        G = g(fam)
        assert delta_exact_uniform(G, cycles_only=True).value == delta_exact_uniform(G).value


def test_tie_break_is_deterministic():
    G = g("complete:n=4")
    a, b = delta_exact_uniform(G), delta_exact_uniform(G)
    assert a.triangle == b.triangle and a.witness == b.witness


# --- lower bound and oracle --------------------------------------------------


def test_lower_bound_non_uniform_cycle():
    G = build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])
    res = delta_lower_bound(G)
    assert res.value == F(3, 2) and res.mode == LOWER_BOUND


def test_lower_bound_tree_any_lengths():
    T = build_graph("abcd", [("a", "b", F(7, 3)), ("b", "c", 1), ("b", "d", F(1, 5))])
    assert delta_lower_bound(T, F(1, 3)).value == 0


@settings(max_examples=20, deadline=None)
@given(small_graphs(max_n=5, uniform=True))
def test_lower_bound_equals_exact_on_uniform(G):
    assert delta_lower_bound(G).value == delta_exact_uniform(G).value


@settings(max_examples=15, deadline=None)
@given(small_graphs(max_n=4))
def test_lower_bound_monotone_in_net(G):
    unit = min(e.length for e in G.edges)
    values = [delta_lower_bound(G, unit / 2**j).value for j in range(3)]
    assert values == sorted(values)
    assert values[-1] <= diameter(G) / 2


@pytest.mark.parametrize("family, eps, expected", [("cycle:n=4", F(1, 4), 1), ("path:n=4", F(1, 3), 0), ("cycle:n=6", F(1, 2), F(3, 2))])
def test_oracle_examples(family, eps, expected):
    assert delta_sampling_oracle(g(family), eps) == expected


def test_oracle_budget():
    with pytest.raises(OracleBudgetExceeded):
        delta_sampling_oracle(g("cycle:n=6"), F(1, 8), budget=100)


def test_compute_delta_dispatch():
    G = build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])
    assert compute_delta(G).mode == LOWER_BOUND
    assert compute_delta(g("cycle:n=4")).mode == EXACT_UNIFORM
    assert compute_delta(g("cycle:n=4"), "oracle", F(1, 2)).value == 1


# --- upper bounds and the quadrilateral path --------------------------------


def test_upper_bound_report():
    assert dict(upper_bound_report(g("cycle:n=4"))) == {"half_diameter": 1, "k_m_over_4": 1}
    assert dict(upper_bound_report(g("star:m=3")))["tree"] == 0
    assert dict(upper_bound_report(g("cycle:n=5")))["k_m_over_4"] == F(5, 4) == delta_exact_uniform(g("cycle:n=5")).value


def test_quadrilateral_zero_legs():
    G = g("cycle:n=6")
    x, y = G.vertex(0), G.vertex(3)
    assert quadrilateral_gamma_check(G, x, y, x, y, F(3, 2)) <= 0


def test_quadrilateral_unit_legs():
    G = g("cycle:n=6")
    x, y, u, v = G.vertex(0), G.vertex(3), G.vertex(1), G.vertex(4)
    assert quadrilateral_gamma_check(G, x, y, u, v, F(3, 2)) <= 0


def test_quadrilateral_tree():
    G = g("path:n=5")
    x, y, u, v = G.vertex(0), G.vertex(4), G.vertex(1), G.midpoint(3)
    assert quadrilateral_gamma_check(G, x, y, u, v, 0) <= 0


def test_quadrilateral_long_legs_rejected():
    G = g("cycle:n=6")
    with pytest.raises(HypothesisViolated):
        quadrilateral_gamma_check(G, G.vertex(0), G.vertex(3), G.vertex(2), G.vertex(3), 0)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_random_quadrilaterals_are_two_delta_thin(data):
    G = data.draw(small_graphs(max_n=5, uniform=True, lengths=(1,)))
    dG = delta_exact_uniform(G).value
    pts = grid_points(G, F(1, 2))
    corners = [data.draw(st.sampled_from(pts)) for _ in range(4)]
    sides = [enumerate_geodesics(G, corners[i], corners[(i + 1) % 4]) for i in range(4)]
    chosen = [s[data.draw(st.integers(0, len(s) - 1))] for s in sides]
    for i, side in enumerate(chosen):
        others = [chosen[j] for j in range(4) if j != i]
        for p in sample_path(G, side, F(1, 4)):
            assert distance_to_pieces(G, p, others) <= 2 * dG


# --- line-graph inequalities -------------------------------------------------


def test_inequalities_c5():
    rep = verify_line_graph_inequalities(g("cycle:n=5"))
    assert rep.exact and rep.all_hold and rep.characterizations_ok
    assert rep.delta_G.value == rep.delta_L.value == F(5, 4)
    assert rep.record("lower").slack == 0
    assert rep.record("edge_count").equality


def test_inequalities_star():
    rep = verify_line_graph_inequalities(g("star:m=3"))
    assert rep.delta_G.value == 0 and rep.delta_L.value == F(3, 4)
    assert rep.record("upper_uniform").right == F(5, 2)
    assert rep.all_hold and rep.characterizations_ok


def test_inequalities_c6_degree_bound_equality():
    rep = verify_line_graph_inequalities(g("cycle:n=6"))
    r = rep.record("max_degree")
    assert r.right == F(3, 2) == rep.delta_L.value
    assert r.equality and r.equality_expected


def test_inequalities_non_uniform_marks_k_records():
    G = build_graph("abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)])
    rep = verify_line_graph_inequalities(G)
    assert not rep.exact
    assert rep.record("upper_uniform").applicable is False
    assert rep.record("lower").applicable


def test_prior_bounds_reported_for_unit_lengths():
    rep = verify_line_graph_inequalities(g("complete:n=4"))
    assert rep.record("prior_upper").comparison_only and rep.record("prior_upper").holds
    rep = verify_line_graph_inequalities(g("cycle:n=4,k=2"))
    assert not rep.record("prior_upper").applicable


def test_random_graph_inequalities():
    for seed in range(10):
        rng = random.Random(seed)
        G = g(f"random_connected:n={rng.randint(3, 6)},p=1/2,seed={seed}")
        rep = verify_line_graph_inequalities(G)
        assert rep.all_hold and rep.characterizations_ok
        assert rep.delta_L.value <= 5 * rep.delta_G.value + 3 * G.l_max
        corr = build_line_graph(G)
        assert rep.delta_L.value <= diameter(corr.L) / 2
