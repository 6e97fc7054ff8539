"""Graph families used for golden values and sweeps.

A family is written as ``kind:key=value,...``, e.g. ``cycle:n=6,k=1`` or
``random_connected:n=7,p=1/2,seed=42``.  Values may be rationals; in sweeps
an integer parameter may also be a range ``3..8``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from hyperline.errors import InvalidParameters, NoKnownValue
from hyperline.metric_graph import MetricGraph, as_rational, build_graph

KINDS = (
    "cycle",
    "path",
    "star",
    "complete",
    "complete_bipartite",
    "random_tree",
    "random_connected",
    "chorded_cycle",
)

_REQUIRED = {
    "cycle": ("n",),
    "path": ("n",),
    "star": ("m",),
    "complete": ("n",),
    "complete_bipartite": ("a", "b"),
    "random_tree": ("n", "seed"),
    "random_connected": ("n", "p", "seed"),
    "chorded_cycle": ("n",),
}

MAX_CONNECT_RETRIES = 1000


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = ()

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    @property
    def k(self) -> Fraction:
        return Fraction(self.get("k", 1))

    def with_params(self, **kw) -> "FamilySpec":
        d = dict(self.params)
        d.update(kw)
        return FamilySpec(self.kind, tuple(sorted(d.items())))

    def __str__(self) -> str:
        body = ",".join(f"{key}={_fmt(v)}" for key, v in self.params)
        return f"{self.kind}:{body}" if body else self.kind


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _parse_value(key: str, raw: str):
    if key in ("k", "p"):
        return as_rational(raw)
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameters(f"parameter {key} must be an integer, got {raw!r}") from None


def parse_family_ranges(text: str) -> list[FamilySpec]:
    """Parse a family string, expanding ``a..b`` ranges into a list of specs."""
    kind, _, body = text.strip().partition(":")
    if kind not in KINDS:
        raise InvalidParameters(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")
    keys, choices = [], []
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, sep, raw = item.partition("=")
        if not sep:
            raise InvalidParameters(f"expected key=value, got {item!r}")
        keys.append(key)
        if ".." in raw:
            lo, hi = raw.split("..", 1)
            choices.append([_parse_value(key, str(x)) for x in range(int(lo), int(hi) + 1)])
        else:
            choices.append([_parse_value(key, raw)])
    specs = [FamilySpec(kind, tuple(sorted(zip(keys, combo)))) for combo in product(*choices)]
    for s in specs:
        _validate(s)
    return specs


def parse_family(text: str) -> FamilySpec:
    specs = parse_family_ranges(text)
    if len(specs) != 1:
        raise InvalidParameters(f"{text!r} describes {len(specs)} graphs; expected one")
    return specs[0]


def _validate(spec: FamilySpec) -> None:
    for key in _REQUIRED[spec.kind]:
        if spec.get(key) is None:
            raise InvalidParameters(f"{spec.kind} needs parameter {key}")
    n = spec.get("n")
    minimum = {"cycle": 3, "chorded_cycle": 5, "path": 2, "complete": 2, "random_tree": 2, "random_connected": 2}
    if spec.kind in minimum and n < minimum[spec.kind]:
        raise InvalidParameters(f"{spec.kind} needs n >= {minimum[spec.kind]}, got {n}")
    if spec.kind == "star" and spec.get("m") < 1:
        raise InvalidParameters("star needs m >= 1")
    if spec.kind == "complete_bipartite" and min(spec.get("a"), spec.get("b")) < 1:
        raise InvalidParameters("complete_bipartite needs a, b >= 1")
    if spec.k <= 0:
        raise InvalidParameters("edge length k must be positive")
    if spec.kind == "random_connected" and not 0 < spec.get("p") <= 1:
        raise InvalidParameters("edge probability p must lie in (0, 1]")


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # Uniform over labelled trees on n vertices.
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges


def _connected(n: int, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)}) == 1


def generate(spec: FamilySpec) -> MetricGraph:
    _validate(spec)
    k = spec.k
    kind = spec.kind
    if kind in ("cycle", "chorded_cycle"):
        n = spec.get("n")
        edges = [(i, (i + 1) % n) for i in range(n)]
        if kind == "chorded_cycle":
            edges.append((0, 2))
        verts = range(n)
    elif kind == "path":
        n = spec.get("n")
        verts, edges = range(n), [(i, i + 1) for i in range(n - 1)]
    elif kind == "star":
        m = spec.get("m")
        verts, edges = range(m + 1), [(0, i) for i in range(1, m + 1)]
    elif kind == "complete":
        n = spec.get("n")
        verts, edges = range(n), list(combinations(range(n), 2))
    elif kind == "complete_bipartite":
        a, b = spec.get("a"), spec.get("b")
        verts, edges = range(a + b), [(i, a + j) for i in range(a) for j in range(b)]
    elif kind == "random_tree":
        n = spec.get("n")
        verts, edges = range(n), _prufer_tree(n, random.Random(spec.get("seed")))
    elif kind == "random_connected":
        n, p = spec.get("n"), spec.get("p")
        rng = random.Random(spec.get("seed"))
        pairs = list(combinations(range(n), 2))
        for _ in range(MAX_CONNECT_RETRIES):
            # Compare against exact p with integer draws to stay free of float rounding.
            edges = [e for e in pairs if rng.randrange(p.denominator) < p.numerator]
            if _connected(n, edges):
                break
        else:
            raise InvalidParameters(f"no connected sample after {MAX_CONNECT_RETRIES} tries for {spec}")
        verts = range(n)
    else:
        raise InvalidParameters(f"unknown family {kind!r}")
    return build_graph(list(verts), [(u, v, k) for u, v in edges])


@dataclass(frozen=True)
class KnownDelta:
    family: FamilySpec
    delta_G: Fraction | None
    delta_L: Fraction | None
    provenance: str


def known_delta(spec: FamilySpec) -> KnownDelta:
    """Expected constants for families where they are known in closed form.

    ``provenance`` names where each value comes from: ``cycle`` (a cycle of
    length l has constant l/4), ``tree`` (trees are 0-hyperbolic),
    ``chorded_cycle`` (the chorded cycle keeps constant kn/4 for both graphs),
    or ``oracle`` for values only confirmed by the brute-force search.
    """
    _validate(spec)
    k = spec.k
    kind = spec.kind
    if kind == "cycle":
        n = spec.get("n")
        return KnownDelta(spec, n * k / 4, n * k / 4, "cycle")
    if kind == "chorded_cycle":
        n = spec.get("n")
        return KnownDelta(spec, k * n / 4, k * n / 4, "chorded_cycle")
    if kind == "path":
        n = spec.get("n")
        return KnownDelta(spec, Fraction(0), Fraction(0) if n >= 3 else None, "tree")
    if kind == "random_tree":
        return KnownDelta(spec, Fraction(0), None, "tree")
    if kind == "star":
        m = spec.get("m")
        if m == 3:
            return KnownDelta(spec, Fraction(0), 3 * k / 4, "tree; line graph is a 3-cycle")
        if m >= 4:
            return KnownDelta(spec, Fraction(0), k, "tree; line graph K_m value from oracle")
        return KnownDelta(spec, Fraction(0), None, "tree")
    if kind == "complete":
        n = spec.get("n")
        if n == 2:
            return KnownDelta(spec, Fraction(0), None, "tree")
        if n == 3:
            return KnownDelta(spec, 3 * k / 4, 3 * k / 4, "cycle")
        return KnownDelta(spec, k, None, "oracle")
    raise NoKnownValue(f"no closed-form constant for {spec}")
