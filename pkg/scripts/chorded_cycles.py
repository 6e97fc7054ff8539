"""Constants of a cycle with one short chord, and of its line graph.

Adding a chord between two vertices at distance 2 leaves both constants at
n k / 4.  The script checks this for a range of n with the exact search and,
where affordable, the grid oracle.

    python scripts/chorded_cycles.py --n 5..10 --oracle-max 8
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from hyperline.families import generate, parse_family
from hyperline.hyperbolicity import delta_exact_uniform, delta_sampling_oracle
from hyperline.line_graph import build_line_graph


@dataclass(frozen=True)
class ChordConfig:
    n_lo: int = 5
    n_hi: int = 10
    k: Fraction = Fraction(1)
    epsilon: Fraction = Fraction(1, 4)
    oracle_max: int = 8


def run(cfg: ChordConfig) -> int:
    print("n\texpected\tdelta_G\tdelta_L\toracle_G\toracle_L\tstatus")
    bad = 0
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        G = generate(parse_family(f"chorded_cycle:n={n},k={cfg.k}"))
        L = build_line_graph(G).L
        rg, rl = delta_exact_uniform(G), delta_exact_uniform(L)
        expected = n * cfg.k / 4
        og = ol = "-"
        if n <= cfg.oracle_max:
            og = delta_sampling_oracle(G, cfg.epsilon * cfg.k)
            ol = delta_sampling_oracle(L, cfg.epsilon * cfg.k)
        ok = rg.value == rl.value == expected and og in ("-", expected) and ol in ("-", expected)
        bad += not ok
        print(f"{n}\t{expected}\t{rg.value}\t{rl.value}\t{og}\t{ol}\t{'ok' if ok else 'MISMATCH'}")
        if not ok:
            print(f"  witness in G: {[G.describe(p) for p in rg.triangle.corners]} at {G.describe(rg.witness)}")
            print(f"  witness in L: {[L.describe(p) for p in rl.triangle.corners]} at {L.describe(rl.witness)}")
    return 1 if bad else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n", default="5..10", help="range lo..hi")
    ap.add_argument("--k", type=Fraction, default=Fraction(1))
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(1, 4), help="oracle grid, in units of k")
    ap.add_argument("--oracle-max", type=int, default=8, help="largest n for the oracle cross-check")
    a = ap.parse_args(argv)
    lo, _, hi = a.n.partition("..")
    return run(ChordConfig(int(lo), int(hi or lo), a.k, a.epsilon, a.oracle_max))


if __name__ == "__main__":
    raise SystemExit(main())
