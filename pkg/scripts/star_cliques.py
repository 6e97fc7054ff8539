"""Line graphs of stars are cliques: tabulate their constants.

    python scripts/star_cliques.py --m 3..6
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from hyperline.families import generate, parse_family
from hyperline.hyperbolicity import delta_exact_uniform, delta_sampling_oracle, upper_bound_report
from hyperline.line_graph import build_line_graph


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--m", default="3..6")
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(1, 4))
    ap.add_argument("--oracle-max", type=int, default=5)
    a = ap.parse_args(argv)
    lo, _, hi = a.m.partition("..")
    print("m\tdelta_L\toracle\thalf_diam_L\tn k D(D-1)/8")
    for m in range(int(lo), int(hi or lo) + 1):
        G = generate(parse_family(f"star:m={m}"))
        L = build_line_graph(G).L
        d = delta_exact_uniform(L).value
        oracle = delta_sampling_oracle(L, a.epsilon) if m <= a.oracle_max else "-"
        bounds = dict(upper_bound_report(L))
        deg_bound = Fraction(G.n * G.max_degree * (G.max_degree - 1), 8)
        print(f"{m}\t{d}\t{oracle}\t{bounds['half_diameter']}\t{deg_bound}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
