"""How close the largest nontrivial eigenvalue comes to 2 sqrt(q), per family and q.

For each graph the largest nontrivial |lambda| is attributed to the representation that
produces it (from the predicted spectrum), so one can see which series is extremal.
"""

import argparse
import math
import sys

import numpy as np

from pgl2graphs.cayley import family_graph
from pgl2graphs.cli import Context
from pgl2graphs.field_tower import prime_power
from pgl2graphs.spectra import nontrivial, sym_eigenvalues


def tightness(q: int, family: str) -> list[tuple]:
    ctx = Context(*prime_power(q))
    bound = 2 * math.sqrt(q)
    out = []
    for c in ctx.params(family):
        g = family_graph(ctx.G, family, c, ctx.space(family))
        ev = sym_eigenvalues(g.adjacency)
        m = max(map(abs, nontrivial(ev, g.k)), default=0.0)
        pred = ctx.predictor.assemble_predicted(family, c)
        src = [s for v, _, s in pred.entries if abs(abs(v) - m) < 1e-8 and abs(v) < g.k - 1e-8]
        out.append((c, m, m / bound, src[0] if src else "-"))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", type=int, nargs="+", default=[3, 5, 7, 9, 11, 13])
    ap.add_argument("--families", nargs="+", default=["k", "u", "a"])
    args = ap.parse_args(argv)
    print(f"{'fam':>3} {'q':>3} {'graphs':>6} {'mean ratio':>10} {'max ratio':>9}  extremal source")
    for fam in args.families:
        for q in args.qs:
            rows = tightness(q, fam)
            ratios = np.array([r[2] for r in rows])
            best = rows[int(np.argmax(ratios))]
            print(f"{fam:>3} {q:>3} {len(rows):>6} {ratios.mean():10.4f} {ratios.max():9.4f}  {best[3]} (param {best[0]})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
