"""Check the explicit eigenfunctions on the A-graphs: the three cell combinations and the
two Steinberg functions built from Whittaker lifts, printing residuals ||A f - lambda f|| / ||f||.
"""

import argparse
import sys

from pgl2graphs.cayley import family_graph
from pgl2graphs.characters import Rep
from pgl2graphs.cli import Context
from pgl2graphs.field_tower import prime_power
from pgl2graphs.kirillov import (
    RepInstance,
    a_cell_indicators,
    a_steinberg1_eigenfunctions,
    basis_vector,
    verify_eigenpair,
    whittaker_lift,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", type=int, nargs="+", default=[5, 7, 9, 11])
    args = ap.parse_args(argv)
    for q in args.qs:
        ctx = Context(*prime_power(q))
        space = ctx.space("a")
        c = ctx.params("a")[0]
        g = family_graph(ctx.G, "a", c, space)
        f1, f2, f3 = a_cell_indicators(space)
        h = (1 - q) / 2
        cells = [verify_eigenpair(g, f, lam) for f, lam in ((f1 - f3, 0), (f1 + f2 + f3, q - 1), (h * f1 + f2 + h * f3, -2))]
        ri = RepInstance(ctx.chars, Rep("steinberg", 0))
        st = [verify_eigenpair(g, f, lam) for lam, f in a_steinberg1_eigenfunctions(ri, space)]
        # the alternative combination (q-1) W_1 - W_D0 for the eigenvalue -2
        W1 = whittaker_lift(ri, basis_vector(ri, 0), space)
        WD = whittaker_lift(ri, basis_vector(ri, "D0"), space)
        alt = verify_eigenpair(g, (q - 1) * W1 - WD, -2.0)
        print(
            f"q={q:>2} c={c}: cells {max(cells):.1e}, Steinberg 0/-2 {st[0]:.1e}/{st[1]:.1e}, "
            f"(q-1)W_1 - W_D0 at -2: {alt:.3f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
