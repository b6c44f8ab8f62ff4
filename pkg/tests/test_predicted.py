import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pgl2graphs.cayley import family_graph
from pgl2graphs.characters import Rep
from pgl2graphs.errors import DimensionMismatch, ForbiddenParam, InvalidParam, ZeroParam
from pgl2graphs.pgl2 import SubgroupKind, conic_solutions
from pgl2graphs.predicted import (
    FixedSpaceDims,
    PredictedSpectrum,
    a_psi0_block,
    a_steinberg1_block,
    fixed_space_dims,
)
from pgl2graphs.spectra import match_multiset, sym_eigenvalues

from conftest import QS, SMALL_QS, world


def as_counter(ps: PredictedSpectrum) -> dict:
    out: dict = {}
    for v, m, _ in ps.entries:
        key = round(v, 9) + 0.0
        out[key] = out.get(key, 0) + m
    return out


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("fam", "kua")
def test_predicted_matches_computed(q, fam):
    w = world(q)
    for c in w.params(fam):
        g = family_graph(w.G, fam, c, w.space(fam))
        pred = w.predictor.assemble_predicted(fam, c)
        assert pred.total == g.n
        assert match_multiset(sym_eigenvalues(g.adjacency), pred.expanded(), 1e-6).success


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("kind", ["K", "U", "A"])
def test_fixed_space_dimension_identities(q, kind):
    fixed_space_dims(world(q).chars, kind).check()


def test_dimension_check_detects_errors():
    d = FixedSpaceDims(SubgroupKind.K, 5, [("trivial", 1, 1)])
    with pytest.raises(DimensionMismatch):
        d.check()


def test_pinned_small_predictions():
    P = world(3).predictor
    assert as_counter(P.assemble_predicted("k", 0)) == {4.0: 1, 0.0: 3, -2.0: 2}
    assert as_counter(P.assemble_predicted("u", 1)) == {3.0: 2, -1.0: 6}
    a = P.assemble_predicted("a", 0)
    assert a.total == 12
    assert {2.0, 0.0, -2.0} <= set(as_counter(a))
    r5 = math.sqrt(5)
    u5 = as_counter(world(5).predictor.u_predicted_spectrum(2))
    assert u5 == {5.0: 1, -5.0: 1, -1.0: 5, 1.0: 5, round(r5, 9): 6, round(-r5, 9): 6}


def test_k_nondiscrete_q3_example():
    P = world(3).predictor
    assert P.k_eigen_nondiscrete(1, 0) == pytest.approx(0.0, abs=1e-12)
    assert sorted(conic_solutions(world(3).G, 0)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert P.k_eigen_discrete(1, 0) == pytest.approx(-2.0, abs=1e-12)


@pytest.mark.parametrize("q", QS)
def test_pointwise_bounds(q):
    w = world(q)
    P, ch = w.predictor, w.chars
    bound = 2 * math.sqrt(q) + 1e-8
    for c in w.params("k"):
        for lam in ch.discrete_params():
            for y, x in conic_solutions(w.G, c):
                assert abs(P.s_yx(lam, y, x)) <= bound
        for mu in range(1, q - 1):
            assert abs(P.k_eigen_nondiscrete(mu, c)) <= bound
    for c in w.params("a"):
        for mu in range(1, q - 1):
            assert abs(P.a_eigen_nondiscrete(mu, c)) <= bound
        for rep in ch.reps():
            if rep != Rep("steinberg", 0):
                assert abs(P.a_eigen_generic(rep, c)) <= bound


@pytest.mark.parametrize("q", SMALL_QS)
def test_conjugate_pairs_agree(q):
    w = world(q)
    P, ch = w.predictor, w.chars
    for c in w.params("k"):
        for mu in range(1, q - 1):
            assert P.k_eigen_nondiscrete(mu, c) == pytest.approx(P.k_eigen_nondiscrete(-mu, c), abs=1e-9)
        for lam in ch.discrete_params():
            assert P.k_eigen_discrete(lam, c) == pytest.approx(P.k_eigen_discrete(-lam, c), abs=1e-9)
    for c in w.params("a"):
        for mu in range(1, q - 1):
            assert P.a_eigen_nondiscrete(mu, c) == pytest.approx(P.a_eigen_nondiscrete(-mu, c), abs=1e-9)


@pytest.mark.parametrize("q", QS)
def test_generic_and_nondiscrete_routes_agree(q):
    w = world(q)
    P, ch = w.predictor, w.chars
    nu = (q - 1) // 2
    for c in w.params("a"):
        for mu in ch.principal_params() + [nu]:
            kind = "steinberg" if mu == nu else "principal"
            assert P.a_eigen_generic(Rep(kind, mu), c) == pytest.approx(P.a_eigen_nondiscrete(mu, c), abs=1e-8)


@pytest.mark.parametrize("q", SMALL_QS)
def test_kloosterman_rewritings(q):
    w = world(q)
    P, ch = w.predictor, w.chars
    for c in w.params("a"):
        for lam in ch.discrete_params():
            assert P.a_kloosterman_discrete(lam, c) == pytest.approx(
                P.a_eigen_generic(Rep("discrete", lam), c), abs=1e-8
            )
        for mu in ch.principal_params():
            assert P.a_kloosterman_principal(mu, c) == pytest.approx(
                P.a_eigen_generic(Rep("principal", mu), c), abs=1e-8
            )


@pytest.mark.parametrize("q", (3, 5))
def test_generic_eigenvalue_independent_of_psi(q):
    w = world(q)
    P, ch = w.predictor, w.chars
    for c in w.params("a"):
        for rep in ch.reps():
            if rep == Rep("steinberg", 0):
                continue
            vals = [P.a_eigen_generic(rep, c, a) for a in range(1, q)]
            assert max(vals) - min(vals) < 1e-9


@pytest.mark.parametrize("q", QS)
def test_blocks(q):
    b = a_psi0_block(q)
    assert np.trace(b.matrix) == pytest.approx(q - 3)
    assert max(b.residuals()) < 1e-12
    s = a_steinberg1_block(q)
    assert np.trace(s.matrix) == pytest.approx(-2)
    assert np.linalg.det(s.matrix) == pytest.approx(0, abs=1e-12)
    assert max(s.residuals()) < 1e-12
    assert sorted(np.linalg.eigvals(s.matrix).real) == pytest.approx([-2, 0], abs=1e-12)


def test_block_examples():
    assert sorted(np.linalg.eigvals(a_psi0_block(3).matrix).real) == pytest.approx([-2, 0, 2])
    assert np.allclose(a_steinberg1_block(5).matrix, [[-6 / 5, 1 / 5], [24 / 5, -4 / 5]])


def test_errors():
    P = world(5).predictor
    with pytest.raises(ForbiddenParam):
        P.k_eigen_nondiscrete(1, 1)
    with pytest.raises(InvalidParam):
        P.k_eigen_nondiscrete(0, 0)
    with pytest.raises(ZeroParam):
        P.u_predicted_spectrum(0)
    with pytest.raises(ForbiddenParam):
        P.a_eigen_nondiscrete(1, P.delta)
    with pytest.raises(InvalidParam):
        P.a_eigen_generic(Rep("steinberg", 0), 0)
    with pytest.raises(InvalidParam):
        P.s_yx(3, 1, 0)
    ps = PredictedSpectrum()
    with pytest.raises(ValueError):
        ps.add(1 + 1e-6j, 1, "bad")


@settings(max_examples=30, deadline=None)
@given(q=st.sampled_from(SMALL_QS), data=st.data())
def test_k_discrete_is_real_average(q, data):
    w = world(q)
    c = data.draw(st.sampled_from(w.params("k")))
    lam = data.draw(st.sampled_from(w.chars.discrete_params()))
    sols = conic_solutions(w.G, c)
    assert len(sols) == q + 1
    vals = [w.predictor.s_yx(lam, y, x) for y, x in sols]
    assert abs(sum(vals).imag) < 1e-9
