import pytest
from hypothesis import given, settings, strategies as st

from pgl2graphs.errors import ForbiddenParam, SingularMatrix, ZeroParam
from pgl2graphs.pgl2 import (
    SubgroupKind,
    a_double_coset,
    a_elements,
    double_coset_of,
    double_coset_partition,
    family_double_coset,
    k_elements,
    u_elements,
)

from conftest import QS, world

INDEX = {"K": lambda q: q * (q - 1), "U": lambda q: q * q - 1, "A": lambda q: q * (q + 1)}
N_DOUBLE = {"K": lambda q: q, "U": lambda q: 2 * (q - 1), "A": lambda q: q + 4}
DC_SIZE = {"K": lambda q: q + 1, "U": lambda q: q, "A": lambda q: q - 1}


@pytest.mark.parametrize("q", QS)
def test_group_order_and_subgroups(q):
    G = world(q).G
    assert len(G.elements) == q**3 - q == len(set(G.elements))
    for kind, order in (("U", q), ("A", q - 1), ("K", q + 1)):
        H = G.subgroup_elements(kind)
        assert len(set(H)) == order
        Hs = set(H)
        assert all(G.mul(x, y) in Hs for x in H for y in H)
        # abelian
        assert all(G.mul(x, y) == G.mul(y, x) for x in H for y in H)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("fam", ["K", "U", "A"])
def test_coset_and_double_coset_counts(q, fam):
    w = world(q)
    space = w.space(fam)
    assert len(space) == INDEX[fam](q)
    assert len(double_coset_partition(space)) == N_DOUBLE[fam](q)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("fam", ["K", "U", "A"])
def test_parametric_double_cosets_match_oracle(q, fam):
    w = world(q)
    space = w.space(fam)
    for c in w.params(fam):
        dc = family_double_coset(space, c)
        assert dc.measured_count == DC_SIZE[fam](q)
        assert dc.symmetric
        rep = space.reps[dc.coset_indices[0]]
        assert sorted(dc.coset_indices) == list(double_coset_of(space, rep).coset_indices)


@pytest.mark.parametrize("q", QS)
def test_every_generic_double_coset_is_parametrized(q):
    """Double cosets avoiding the identity and with trivial stabilizers are the K_c, U_t, A_c."""
    w = world(q)
    for fam in "KUA":
        space = w.space(fam)
        seen = {tuple(sorted(family_double_coset(space, c).coset_indices)) for c in w.params(fam)}
        generic = {
            tuple(o) for o in double_coset_partition(space) if len(o) == DC_SIZE[fam](q)
        }
        assert seen <= generic
        assert len(seen) == len(w.params(fam))


def test_pinned_k_conic_q3():
    G = world(3).G
    assert sorted(k_elements(G, 0)) == sorted(
        G.canonicalize(y, G.f.mul(G.delta, x), 0, 1) for y, x in [(1, 1), (1, 2), (2, 1), (2, 2)]
    )


def test_errors():
    G = world(5).G
    with pytest.raises(SingularMatrix):
        G.canonicalize(1, 2, 2, 4)
    with pytest.raises(ForbiddenParam):
        k_elements(G, 1)
    with pytest.raises(ForbiddenParam):
        k_elements(G, 4)
    with pytest.raises(ZeroParam):
        u_elements(G, 0)
    with pytest.raises(ForbiddenParam):
        a_elements(G, G.delta)
    with pytest.raises(ForbiddenParam):
        a_double_coset(world(5).space("A"), 1)


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from(QS), data=st.data())
def test_group_axioms(q, data):
    G = world(q).G
    n = len(G.elements)
    x, y, z = (G.elements[data.draw(st.integers(0, n - 1))] for _ in range(3))
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inv(x)) == G.identity
    assert G.mul(G.identity, x) == x
    assert G.det_is_square(G.mul(x, y)) == (G.det_is_square(x) == G.det_is_square(y))


@settings(max_examples=100, deadline=None)
@given(q=st.sampled_from(QS), fam=st.sampled_from("KUA"), data=st.data())
def test_coset_index_is_constant_on_cosets(q, fam, data):
    w = world(q)
    space = w.space(fam)
    G = w.G
    g = G.elements[data.draw(st.integers(0, len(G.elements) - 1))]
    idx = space.index(g)
    assert all(space.index(G.mul(g, h)) == idx for h in space.subgroup)
    assert space.reps[idx] == min(G.mul(g, h) for h in space.subgroup)
