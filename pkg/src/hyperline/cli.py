"""Command-line front end.

    hyperline delta     --family cycle:n=5,k=1
    hyperline linegraph --file graph.json
    hyperline verify    --family chorded_cycle:n=6,k=1 --check-qi
    hyperline sweep     --family cycle:n=3..8,k=1 --family random_tree:n=9,seed=1..20

Exit codes: 0 ok, 1 input or mode error, 2 resource cap, 3 inequality violated.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from hyperline.errors import CapExceeded, HyperlineError, OracleBudgetExceeded
from hyperline.families import FamilySpec, generate, parse_family, parse_family_ranges
from hyperline.graph_io import geodesic_to_json, graph_to_json, load_graph, point_to_json, _label_str
from hyperline.hyperbolicity import DeltaResult, compute_delta, inequality_records, InequalityReport
from hyperline.line_graph import build_line_graph, verify_quasi_isometry
from hyperline.metric_graph import DEFAULT_GEODESIC_CAP, MetricGraph, as_rational, format_rational

log = logging.getLogger("hyperline")

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_VIOLATION = 0, 1, 2, 3

RECORD_ORDER = (
    "lower",
    "upper_lmax",
    "upper_uniform",
    "half_diameter",
    "edge_count",
    "max_degree",
    "degree_sum",
    "prior_upper",
    "prior_lower",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    file: str | None = None
    family: tuple = ()
    mode: str = "auto"
    epsilon: Fraction | None = None
    cap: int = DEFAULT_GEODESIC_CAP
    format: str = "json"
    seed: int | None = None
    check_qi: bool = False
    jobs: int = 1


def _r(x) -> str | None:
    return None if x is None else format_rational(x)


def _human(x) -> str:
    if x is None:
        return "n/a"
    return f"{format_rational(x)} ({float(x):.6g})"


def _with_seed(spec: FamilySpec, seed) -> FamilySpec:
    if seed is not None and spec.kind.startswith("random") and spec.get("seed") is None:
        return spec.with_params(seed=seed)
    return spec


def _load(cfg: RunConfig) -> tuple[str, MetricGraph]:
    if cfg.file:
        return cfg.file, load_graph(cfg.file)
    if not cfg.family:
        raise HyperlineError("give --file or --family")
    text = cfg.family[0]
    if cfg.seed is not None and text.split(":", 1)[0].startswith("random") and "seed=" not in text:
        text = f"{text},seed={cfg.seed}" if ":" in text else f"{text}:seed={cfg.seed}"
    spec = parse_family(text)
    return str(spec), generate(spec)


def _delta(G: MetricGraph, cfg: RunConfig) -> DeltaResult:
    return compute_delta(G, cfg.mode, cfg.epsilon, cfg.cap)


def delta_json(G: MetricGraph, res: DeltaResult) -> dict:
    tri = res.triangle
    return {
        "value": format_rational(res.value),
        "mode": res.mode,
        "corners": [point_to_json(G, p) for p in tri.corners] if tri else [],
        "sides": [geodesic_to_json(G, s) for s in tri.sides] if tri else [],
        "is_cycle": tri.is_cycle if tri else False,
        "witness": point_to_json(G, res.witness) if res.witness else None,
        "counts": {"corner_triples": res.corner_triples, "triangles_evaluated": res.triangles_evaluated},
    }


def _emit(obj, fmt: str, csv_rows=None, human=None, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        for row in csv_rows:
            w.writerow(row)
    else:
        out.write(human + "\n")


def cmd_delta(cfg: RunConfig, out=None) -> int:
    source, G = _load(cfg)
    res = _delta(G, cfg)
    obj = {"input": source, "n": G.n, "m": G.m, **delta_json(G, res)}
    rows = [
        ["input", "n", "m", "mode", "delta", "corner_triples", "triangles_evaluated"],
        [source, G.n, G.m, res.mode, format_rational(res.value), res.corner_triples, res.triangles_evaluated],
    ]
    human = f"{source}: delta = {_human(res.value)}  [{res.mode}]"
    if res.witness is not None:
        corners = ", ".join(G.describe(p) for p in res.triangle.corners)
        human += f"\n  witness triangle {{{corners}}}, farthest point {G.describe(res.witness)}"
    _emit(obj, cfg.format, rows, human, out)
    return EXIT_OK


def linegraph_json(G: MetricGraph) -> dict:
    corr = build_line_graph(G)
    L = corr.L
    return {
        "graph": graph_to_json(L),
        "vertex_of_edge": [
            {"edge": [_label_str(G.labels[e.u]), _label_str(G.labels[e.v])], "vertex": _label_str(L.labels[e.index])}
            for e in G.edges
        ],
        "shared_vertex": [
            {
                "line_edge": [_label_str(L.labels[le.first]), _label_str(L.labels[le.second])],
                "vertex": _label_str(G.labels[le.shared]),
                "pm_l_offset": format_rational(corr.pml_of_edge(i).offset),
            }
            for i, le in enumerate(corr.line_edges)
        ],
    }


def cmd_linegraph(cfg: RunConfig, out=None) -> int:
    source, G = _load(cfg)
    obj = linegraph_json(G)
    rows = [["u", "v", "len", "shared_vertex"]] + [
        [e["u"], e["v"], e["len"], s["vertex"]] for e, s in zip(obj["graph"]["edges"], obj["shared_vertex"])
    ]
    human = f"L({source}): {len(obj['graph']['vertices'])} vertices, {len(obj['graph']['edges'])} edges\n" + "\n".join(
        f"  {e['u']} -- {e['v']}  len {e['len']}  (shared {s['vertex']})"
        for e, s in zip(obj["graph"]["edges"], obj["shared_vertex"])
    )
    _emit(obj, cfg.format, rows, human, out)
    return EXIT_OK


def _verify_mode(G: MetricGraph, mode: str) -> str:
    if mode == "auto":
        return "exact" if G.uniform_length is not None else "lower"
    if mode == "oracle":
        raise HyperlineError("verify supports --mode exact or lower")
    return mode


def _record_json(r) -> dict:
    return {
        "name": r.name,
        "statement": r.statement,
        "applicable": r.applicable,
        "comparison_only": r.comparison_only,
        "left": _r(r.left),
        "right": _r(r.right),
        "slack": _r(r.slack),
        "holds": r.holds,
        "equality": r.equality,
        "equality_iff_cycle": r.equality_expected is not None,
        "characterization_ok": r.characterization_ok,
    }


def qi_json(corr, rep) -> dict:
    L, G = corr.L, corr.G
    return {
        "max_lipschitz_excess": format_rational(rep.max_lipschitz_excess),
        "lipschitz_witness": [point_to_json(L, p) for p in rep.lipschitz_witness],
        "max_reciprocal_excess": format_rational(rep.max_reciprocal_excess),
        "reciprocal_witness": [point_to_json(L, p) for p in rep.reciprocal_witness],
        "beta": format_rational(rep.beta),
        "fullness_radius": format_rational(rep.fullness_radius),
        "fullness_witness": point_to_json(G, rep.fullness_witness),
        "epsilon": format_rational(rep.epsilon),
        "vertex_isometry": rep.vertex_isometry,
        "sample_count": rep.sample_count,
        "passes": rep.passes,
    }


def run_verify(G: MetricGraph, cfg: RunConfig):
    mode = _verify_mode(G, cfg.mode)
    corr = build_line_graph(G)
    dG = compute_delta(G, mode, cfg.epsilon, cfg.cap)
    dL = compute_delta(corr.L, mode, cfg.epsilon, cfg.cap)
    report = InequalityReport(dG, dL, mode == "exact", inequality_records(G, dG.value, dL.value))
    qi = verify_quasi_isometry(corr) if cfg.check_qi else None
    return corr, report, qi


def cmd_verify(cfg: RunConfig, out=None) -> int:
    source, G = _load(cfg)
    corr, report, qi = run_verify(G, cfg)
    ok = report.all_hold and report.characterizations_ok and (qi is None or qi.passes)
    obj = {
        "input": source,
        "mode": report.delta_G.mode,
        "exact": report.exact,
        "delta_G": delta_json(G, report.delta_G),
        "delta_L": delta_json(corr.L, report.delta_L),
        "inequalities": [_record_json(r) for r in report.records],
        "all_hold": report.all_hold,
        "characterizations_ok": report.characterizations_ok,
    }
    if qi is not None:
        obj["quasi_isometry"] = qi_json(corr, qi)
    rows = [["name", "applicable", "left", "right", "slack", "holds", "equality"]] + [
        [r.name, r.applicable, _r(r.left), _r(r.right), _r(r.slack), r.holds, r.equality] for r in report.records
    ]
    lines = [
        f"{source}: delta(G) = {_human(report.delta_G.value)}, delta(L(G)) = {_human(report.delta_L.value)}"
        f"  [{report.delta_G.mode}]"
    ]
    for r in report.records:
        if not r.applicable:
            lines.append(f"  {r.name:<14} n/a")
            continue
        tag = "ok" if r.holds else "VIOLATED"
        extra = " (comparison)" if r.comparison_only else ""
        eq = " equality" if r.equality else ""
        lines.append(f"  {r.name:<14} {tag:<8} slack {_human(r.slack)}{eq}{extra}")
    if qi is not None:
        lines.append(
            f"  quasi-isometry {'ok' if qi.passes else 'FAILED'}: lipschitz excess {_human(qi.max_lipschitz_excess)},"
            f" reciprocal excess {_human(qi.max_reciprocal_excess)}, fullness {_human(qi.fullness_radius)}"
        )
    _emit(obj, cfg.format, rows, "\n".join(lines), out)
    if not ok and report.exact:
        sys.stderr.write(f"inequality violated on {source}\n")
        return EXIT_VIOLATION
    return EXIT_OK


SWEEP_HEADER = ["family", "n", "m", "k", "mode", "delta_G", "delta_L"] + [f"slack_{n}" for n in RECORD_ORDER] + [
    "seconds",
    "error",
]


def sweep_row(spec_text: str, mode: str, epsilon, cap: int) -> list:
    start = time.perf_counter()
    try:
        G = generate(parse_family(spec_text))
        cfg = RunConfig("sweep", mode=mode, epsilon=epsilon, cap=cap)
        _, report, _ = run_verify(G, cfg)
        slacks = {r.name: _r(r.slack) for r in report.records}
        k = G.uniform_length
        return [
            spec_text, G.n, G.m, _r(k) if k is not None else "",
            report.delta_G.mode, _r(report.delta_G.value), _r(report.delta_L.value),
            *[slacks.get(n) or "" for n in RECORD_ORDER],
            f"{time.perf_counter() - start:.3f}", "",
        ]
    except HyperlineError as exc:
        log.warning("%s: %s", spec_text, exc)
        return [spec_text] + [""] * (len(SWEEP_HEADER) - 3) + [f"{time.perf_counter() - start:.3f}", str(exc)]


def cmd_sweep(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    specs = []
    for text in cfg.family:
        specs += [str(_with_seed(s, cfg.seed)) for s in parse_family_ranges(text)]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    args = [(s, cfg.mode, cfg.epsilon, cfg.cap) for s in specs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            # map() yields in submission order, so rows keep the input order.
            for row in pool.map(sweep_row, *zip(*args)):
                w.writerow(row)
    else:
        for a in args:
            w.writerow(sweep_row(*a))
            out.flush()
    return EXIT_OK


COMMANDS = {"delta": cmd_delta, "linegraph": cmd_linegraph, "verify": cmd_verify, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperline", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--file", help="graph file (JSON or 'u v len' text)")
        p.add_argument("--family", action="append", default=[], help="family spec, e.g. cycle:n=6,k=1")
        p.add_argument("--mode", choices=["exact", "lower", "oracle"], default="auto")
        p.add_argument("--epsilon", type=as_rational, help="grid resolution p/q for lower/oracle modes")
        p.add_argument("--cap", type=int, default=DEFAULT_GEODESIC_CAP, help="max geodesics per point pair")
        p.add_argument("--format", choices=["json", "csv", "human"], default="json")
        p.add_argument("--seed", type=int, help="seed for random families without one")
        p.add_argument("--check-qi", action="store_true", help="also certify the quasi-isometry bounds")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
        p.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = RunConfig(
        command=args.command,
        file=args.file,
        family=tuple(args.family),
        mode=args.mode,
        epsilon=args.epsilon,
        cap=args.cap,
        format=args.format,
        seed=args.seed,
        check_qi=args.check_qi,
        jobs=args.jobs,
    )
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (CapExceeded, OracleBudgetExceeded) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_CAP
    except (HyperlineError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
