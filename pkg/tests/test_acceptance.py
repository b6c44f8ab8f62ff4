"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with pytest (lines appear in the terminal summary) or directly:
    python3 tests/test_acceptance.py
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import QS, SMALL_QS, world  # noqa: E402
from pgl2graphs.cayley import analyze, build_cusp_graph, component_of, family_graph  # noqa: E402
from pgl2graphs.characters import Rep, TorusChar  # noqa: E402
from pgl2graphs.kirillov import RepInstance, expected_fixed_dim, fixed_vectors, w_lambda_closed_form  # noqa: E402
from pgl2graphs.pgl2 import SubgroupKind, conic_solutions  # noqa: E402
from pgl2graphs.spectra import is_submultiset, match_multiset, nontrivial, sym_eigenvalues  # noqa: E402

from test_spectra import random_sym_int, sturm_eigenvalues  # noqa: E402

RESULTS: dict = {}


def _spectra(q, fam):
    w = world(q)
    for c in w.params(fam):
        g = family_graph(w.G, fam, c, w.space(fam))
        yield w, c, g, sym_eigenvalues(g.adjacency)


def crit1():
    t0 = time.perf_counter()
    worst = 0.0
    for q in QS:
        for w, c, g, ev in _spectra(q, "k"):
            if g.n != q * (q - 1) or g.k != q + 1:
                return False, f"q={q} c={c}: n={g.n} k={g.k}"
            nt = nontrivial(ev, g.k)
            m = max(map(abs, nt), default=0.0)
            worst = max(worst, m / (2 * math.sqrt(q)))
            if m > 2 * math.sqrt(q) + 1e-8:
                return False, f"q={q} c={c}: max |lambda| = {m}"
    dt = time.perf_counter() - t0
    return dt < 30, f"max ratio |lambda|/2sqrt(q) = {worst:.4f}, {dt:.1f} s"


def crit2():
    worst = 0.0
    for q in QS:
        for w, t, g, ev in _spectra(q, "u"):
            pred = w.predictor.u_predicted_spectrum(t)
            m = match_multiset(ev, pred.expanded(), 1e-6)
            worst = max(worst, m.max_distance)
            rep = analyze(g)
            sq = w.f.is_square(t)
            if not m.success or rep.bipartite == sq or (rep.components == 2) != sq:
                return False, f"q={q} t={t}: match {m.max_distance:.2e}, {rep}"
    return True, f"max matching distance {worst:.2e}"


def crit3():
    worst = 0.0
    for q in QS:
        for w, c, g, ev in _spectra(q, "a"):
            nt = nontrivial(ev, g.k)
            if max(map(abs, nt), default=0.0) > 2 * math.sqrt(q) + 1e-8:
                return False, f"q={q} c={c}: bound violated"
            for target in (0.0, q - 1.0, -2.0):
                if not np.any(np.abs(ev - target) < 1e-6):
                    return False, f"q={q} c={c}: eigenvalue {target} missing"
            m = match_multiset(ev, w.predictor.assemble_predicted("a", c).expanded(), 1e-6)
            worst = max(worst, m.max_distance)
            if not m.success:
                return False, f"q={q} c={c}: match distance {m.max_distance:.2e}"
    return True, f"max matching distance {worst:.2e}"


def crit4():
    worst, count = 0.0, 0
    for q in QS:
        for fam in "kua":
            for w, c, g, ev in _spectra(q, fam):
                m = match_multiset(ev, w.predictor.assemble_predicted(fam, c).expanded(), 1e-6)
                worst = max(worst, m.max_distance)
                count += 1
                if not m.success:
                    return False, f"{fam} q={q} param={c}: distance {m.max_distance:.2e}"
    return True, f"{count} graphs, max matching distance {worst:.2e}"


def crit5():
    worst = 0.0
    for q in QS:
        w = world(q)
        P, ch = w.predictor, w.chars
        b = 2 * math.sqrt(q)
        vals = []
        for c in w.params("k"):
            for y, x in conic_solutions(w.G, c):
                vals += [abs(P.s_yx(lam, y, x)) for lam in ch.discrete_params()]
            vals += [abs(P.k_eigen_nondiscrete(mu, c)) for mu in range(1, q - 1)]
        for c in w.params("a"):
            vals += [abs(P.a_eigen_nondiscrete(mu, c)) for mu in range(1, q - 1)]
            vals += [abs(P.a_eigen_generic(r, c)) for r in ch.reps() if r != Rep("steinberg", 0)]
        r = max(vals) / b
        worst = max(worst, r)
        if max(vals) > b + 1e-8:
            return False, f"q={q}: max {max(vals)} > 2sqrt(q)"
    return True, f"max ratio to 2sqrt(q) = {worst:.4f}"


def crit6():
    worst = 0.0
    for q in QS:
        w = world(q)
        for lam in w.chars.discrete_params():
            worst = max(worst, abs(w_lambda_closed_form(w.chars, lam, 1) - (q + 1)))
            for y in range(1, q):
                d = abs(w_lambda_closed_form(w.chars, lam, y) - w_lambda_closed_form(w.chars, lam, w.f.inv(y)))
                if d > 1e-8:
                    return False, f"q={q} Lambda_{lam}: asymmetric at y={y}"
    return worst <= 1e-8, f"max |W(1) - (q+1)| = {worst:.2e}"


def crit7():
    worst = 0.0
    for q in QS:
        ch = world(q).chars
        E = ch.E
        for a in range(1, q):
            G = ch.gauss_table(a)
            worst = max(worst, abs(G[0] + 1), float(np.max(np.abs(np.abs(G[1:]) ** 2 - q))))
            for mu in ch.principal_params():
                eps = ch.epsilon_table(Rep("principal", mu), a)
                worst = max(worst, abs(eps[mu] * eps[(-mu) % (q - 1)] - q))
        psi_tr = ch.add_values(1)[E.trace_table[1:]]
        for j in range(q + 1):
            if (2 * j) % (q + 1) == 0:
                continue
            lam = ch.torus_values(j)
            sd = lam[E.sqrt_delta]
            worst = max(worst, abs(np.sum(lam[1:] * psi_tr) - q * sd))
            s = ch.norm_one_sum(TorusChar(j))
            worst = max(worst, abs(s + sd), min(abs(s - 1), abs(s + 1)))
    return worst <= 1e-8, f"max identity residual {worst:.2e}"


def crit8():
    worst = 0.0
    for q in SMALL_QS:
        w = world(q)
        G = w.G
        rng = np.random.default_rng(q)
        els = G.elements
        for rep in w.chars.reps():
            ri = RepInstance(w.chars, rep)
            for _ in range(100):
                g1, g2 = els[rng.integers(len(els))], els[rng.integers(len(els))]
                d = ri.rep_matrix(G, G.mul(g1, g2)) - ri.rep_matrix(G, g1) @ ri.rep_matrix(G, g2)
                worst = max(worst, float(np.abs(d).max()))
            for kind in SubgroupKind:
                r = fixed_vectors(ri, G, kind, check=False).shape[1]
                if r != expected_fixed_dim(rep, kind):
                    return False, f"q={q} {rep.label} H={kind.value}: rank {r}"
    return worst <= 1e-9, f"max homomorphism residual {worst:.2e}; ranks match"


def crit9():
    details = []
    for p, e in [(3, 1), (5, 1), (3, 2), (7, 1)]:
        X = build_cusp_graph(p, e)
        q = p**e
        ev = sym_eigenvalues(X.adjacency)
        if X.k != q or X.n != (q * q - 1) // (p - 1):
            return False, f"(p,e)=({p},{e}): n={X.n} k={X.k}"
        m = max(map(abs, nontrivial(ev, X.k)), default=0.0)
        if m > 2 * math.sqrt(q - 1) + 1e-8:
            return False, f"(p,e)=({p},{e}): max |lambda| {m}"
        w = world(q)
        U1 = family_graph(w.G, "u", 1, w.space("u"))
        comp = component_of(U1, w.space("u").index(w.G.identity))
        if not is_submultiset(ev, sym_eigenvalues(comp.adjacency)):
            return False, f"(p,e)=({p},{e}): not a sub-multiset"
        details.append(f"q={q}:{m:.3f}")
    return True, "max nontrivial " + ", ".join(details)


def crit10():
    w = world(3)
    k0 = sym_eigenvalues(family_graph(w.G, "k", 0).adjacency)
    u1 = sym_eigenvalues(family_graph(w.G, "u", 1).adjacency)
    ok = np.allclose(k0, [4, 0, 0, 0, -2, -2], atol=1e-12) and np.allclose(u1, [3, 3] + [-1] * 6, atol=1e-12)
    worst = 0.0
    rng = np.random.default_rng(2024)
    for _ in range(10):
        A = random_sym_int(rng)
        worst = max(worst, float(np.max(np.abs(sym_eigenvalues(A) - np.array(sturm_eigenvalues(A))))))
    return ok and worst <= 1e-9, f"pinned spectra {'ok' if ok else 'WRONG'}; Sturm oracle distance {worst:.2e}"


CRITERIA = {
    1: ("K-family Ramanujan bound", crit1),
    2: ("U-family closed-form spectrum and structure", crit2),
    3: ("A-family bound, block eigenvalues and prediction", crit3),
    4: ("spectrum identity for every family and parameter", crit4),
    5: ("pointwise character-sum bounds", crit5),
    6: ("Whittaker normalization and torus symmetry", crit6),
    7: ("character-sum identities", crit7),
    8: ("representation integrity", crit8),
    9: ("cusp graph", crit9),
    10: ("pinned small instances and eigensolver oracle", crit10),
}


def run_criterion(i: int) -> tuple[bool, str]:
    name, fn = CRITERIA[i]
    ok, detail = fn()
    line = f"criterion {i:2d} {'PASS' if ok else 'FAIL'}: {name} ({detail})"
    RESULTS[i] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("i", sorted(CRITERIA), ids=lambda i: f"criterion_{i}")
def test_criterion(i):
    ok, line = run_criterion(i)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(i)[0] for i in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
