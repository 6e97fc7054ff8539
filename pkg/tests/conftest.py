import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hyperline.metric_graph import INTERIOR, GraphPoint, build_graph  # noqa: E402


@st.composite
def small_graphs(draw, max_n=6, uniform=False, lengths=(1, 2, 3, Fraction(1, 2), Fraction(3, 2))):
    """Connected simple graphs: a random spanning tree plus a few extra edges."""
    n = draw(st.integers(2, max_n))
    edges = {}
    for v in range(1, n):
        edges[(draw(st.integers(0, v - 1)), v)] = None
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    for a, b in extra:
        if a != b:
            edges[(min(a, b), max(a, b))] = None
    if uniform:
        k = draw(st.sampled_from(lengths))
        triples = [(a, b, k) for a, b in edges]
    else:
        triples = [(a, b, draw(st.sampled_from(lengths))) for a, b in edges]
    return build_graph(range(n), triples)


@st.composite
def points_of(draw, G, step=Fraction(1, 4)):
    """A vertex or an interior point on the ``step`` grid."""
    if draw(st.booleans()):
        return GraphPoint.vertex(draw(st.integers(0, G.n - 1)))
    e = G.edges[draw(st.integers(0, G.m - 1))]
    slots = int(e.length / step)
    if slots < 2:
        return GraphPoint.vertex(e.u)
    return GraphPoint(INTERIOR, e.index, draw(st.integers(1, slots - 1)) * step)


@pytest.fixture
def c4():
    return build_graph("abcd", [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
