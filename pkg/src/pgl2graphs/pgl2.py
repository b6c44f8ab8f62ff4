"""The group G = PGL_2(F_q), its abelian subgroups U, A, K and their (double) cosets.

Group elements are 4-tuples (a, b, c, d) of field elements in canonical form:
the first nonzero entry, read row-major, equals 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .errors import ForbiddenParam, SingularMatrix, ZeroParam
from .field_tower import FieldTable, find_nonsquare

Elem = tuple  # (a, b, c, d)


class SubgroupKind(str, Enum):
    U = "U"  # unipotent, order q
    A = "A"  # split torus, order q - 1
    K = "K"  # nonsplit torus, order q + 1


class PGL2:
    def __init__(self, f: FieldTable, delta: int | None = None):
        self.f = f
        self.q = f.q
        self.delta = find_nonsquare(f) if delta is None else delta
        self.identity = (1, 0, 0, 1)
        self.w = self.canonicalize(0, 1, f.minus_one, 0)

    # -- basic operations --
    def canonicalize(self, a, b, c, d) -> Elem:
        f = self.f
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0:
            raise SingularMatrix(f"singular matrix {(a, b, c, d)}")
        lead = a or b  # b != 0 whenever a == 0 and the row is nonzero
        if lead == 1:
            return (a, b, c, d)
        s = f.inv(lead)
        m = f.mul
        return (m(a, s), m(b, s), m(c, s), m(d, s))

    def mul(self, g: Elem, h: Elem) -> Elem:
        f = self.f
        m, ad = f.mul, f.add
        a, b, c, d = g
        e, fq, gg, hh = h
        return self.canonicalize(
            ad(m(a, e), m(b, gg)),
            ad(m(a, fq), m(b, hh)),
            ad(m(c, e), m(d, gg)),
            ad(m(c, fq), m(d, hh)),
        )

    def inv(self, g: Elem) -> Elem:
        a, b, c, d = g
        n = self.f.neg
        return self.canonicalize(d, n(b), n(c), a)

    def det(self, g: Elem) -> int:
        f = self.f
        a, b, c, d = g
        return f.sub(f.mul(a, d), f.mul(b, c))

    def det_is_square(self, g: Elem) -> bool:
        """Well defined on PGL_2 since scaling multiplies det by a square."""
        return self.f.is_square(self.det(g))

    # -- generators of the Kirillov action --
    def h(self, r: int) -> Elem:
        return self.canonicalize(r, 0, 0, 1)

    def u(self, s: int) -> Elem:
        return (1, s, 0, 1)

    def order(self, g: Elem) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    @cached_property
    def elements(self) -> list[Elem]:
        """All q^3 - q canonical elements in lexicographic order."""
        f = self.f
        q = self.q
        out = [(0, 1, c, d) for c in range(1, q) for d in range(q)]
        for b in range(q):
            for c in range(q):
                bc = f.mul(b, c)
                for d in range(q):
                    if d != bc:
                        out.append((1, b, c, d))
        return out

    def subgroup_elements(self, kind: SubgroupKind | str) -> list[Elem]:
        kind = SubgroupKind(kind)
        f = self.f
        if kind is SubgroupKind.U:
            return [(1, x, 0, 1) for x in range(self.q)]
        if kind is SubgroupKind.A:
            return [self.canonicalize(y, 0, 0, 1) for y in range(1, self.q)]
        return [self.identity] + [self.canonicalize(b, self.delta, 1, b) for b in range(self.q)]

    def __repr__(self):
        return f"PGL2(q={self.q}, delta={self.delta})"


@dataclass(frozen=True, eq=False)
class CosetSpace:
    group: PGL2
    kind: SubgroupKind
    reps: list
    index_of: dict = field(repr=False)
    subgroup: list = field(repr=False)

    def __len__(self):
        return len(self.reps)

    def index(self, g: Elem) -> int:
        return self.index_of[g]


def coset_space(G: PGL2, kind: SubgroupKind | str) -> CosetSpace:
    """Left cosets gH; each representative is the smallest element of its coset."""
    kind = SubgroupKind(kind)
    H = G.subgroup_elements(kind)
    index_of: dict = {}
    reps = []
    for g in G.elements:
        if g in index_of:
            continue
        i = len(reps)
        reps.append(g)
        for hh in H:
            index_of[G.mul(g, hh)] = i
    return CosetSpace(G, kind, reps, index_of, H)


@dataclass(frozen=True)
class DoubleCoset:
    kind: SubgroupKind
    label: str
    coset_indices: tuple
    symmetric: bool

    @property
    def measured_count(self) -> int:
        return len(self.coset_indices)


def _indices_of(space: CosetSpace, elems) -> list[int]:
    return [space.index_of[x] for x in elems]


def is_symmetric(space: CosetSpace, idxs) -> bool:
    """HsH = Hs^-1H, checked as closure of the coset set under inversion."""
    G = space.group
    s = set(idxs)
    return all(space.index_of[G.inv(space.reps[i])] in s for i in idxs)


def _make(space: CosetSpace, label: str, idxs: list[int], strict: bool = True) -> DoubleCoset:
    if strict:
        if len(set(idxs)) != len(idxs):
            raise ForbiddenParam(f"{label}: repeated cosets (multi-edges)")
        if space.index_of[space.group.identity] in idxs:
            raise ForbiddenParam(f"{label}: contains the identity coset (loops)")
    return DoubleCoset(space.kind, label, tuple(idxs), is_symmetric(space, idxs))


def conic_solutions(G: PGL2, c: int) -> list[tuple[int, int]]:
    """All (y, x) in F^2 with (y + c)^2 - delta x^2 = c^2 - 1."""
    f = G.f
    rhs = f.sub(f.mul(c, c), 1)
    sq = {}
    for x in range(G.q):
        sq.setdefault(f.mul(G.delta, f.mul(x, x)), []).append(x)
    out = []
    for y in range(G.q):
        yc = f.add(y, c)
        need = f.sub(f.mul(yc, yc), rhs)  # = delta x^2
        for x in sq.get(need, ()):
            out.append((y, x))
    return out


def k_params(f: FieldTable) -> list[int]:
    return [c for c in range(f.q) if c not in (1, f.minus_one)]


def u_params(f: FieldTable) -> list[int]:
    return list(range(1, f.q))


def a_params(f: FieldTable, delta: int | None = None) -> list[int]:
    delta = find_nonsquare(f) if delta is None else delta
    return [c for c in range(f.q) if c not in (1, delta)]


def k_elements(G: PGL2, c: int) -> list[Elem]:
    if c in (1, G.f.minus_one):
        raise ForbiddenParam("K_c needs c != +-1")
    f = G.f
    return [G.canonicalize(y, f.mul(G.delta, x), 0, 1) for y, x in conic_solutions(G, c)]


def u_elements(G: PGL2, t: int) -> list[Elem]:
    if t == 0:
        raise ZeroParam("U_t needs t != 0")
    return [G.canonicalize(c, t, G.f.minus_one, 0) for c in range(G.q)]


def a_elements(G: PGL2, c: int) -> list[Elem]:
    f = G.f
    if c in (1, G.delta):
        raise ForbiddenParam("A_c needs c not in {1, delta}")
    dc = f.sub(G.delta, c)
    one_c = f.sub(1, c)
    return [G.canonicalize(x, f.mul(x, dc), 1, one_c) for x in range(1, G.q)]


def k_double_coset(space: CosetSpace, c: int) -> DoubleCoset:
    return _make(space, f"K_{c}", _indices_of(space, k_elements(space.group, c)))


def u_double_coset(space: CosetSpace, t: int) -> DoubleCoset:
    return _make(space, f"U_{t}", _indices_of(space, u_elements(space.group, t)))


def a_double_coset(space: CosetSpace, c: int) -> DoubleCoset:
    dc = _make(space, f"A_{c}", _indices_of(space, a_elements(space.group, c)))
    if not dc.symmetric:
        raise ForbiddenParam(f"A_{c} is not symmetric")
    return dc


def double_coset_of(space: CosetSpace, s: Elem) -> DoubleCoset:
    """Ground truth: the cosets h1 s H for h1 in H."""
    G = space.group
    idxs = sorted({space.index_of[G.mul(h1, s)] for h1 in space.subgroup})
    return _make(space, f"H{s}H", idxs, strict=False)


def double_coset_partition(space: CosetSpace) -> list[list[int]]:
    """Orbits of H acting on G/H by left multiplication, i.e. all double cosets."""
    G = space.group
    seen = [False] * len(space)
    out = []
    for i, r in enumerate(space.reps):
        if seen[i]:
            continue
        orbit = sorted({space.index_of[G.mul(h1, r)] for h1 in space.subgroup})
        for j in orbit:
            seen[j] = True
        out.append(orbit)
    return out


def family_double_coset(space: CosetSpace, param: int) -> DoubleCoset:
    if space.kind is SubgroupKind.K:
        return k_double_coset(space, param)
    if space.kind is SubgroupKind.U:
        return u_double_coset(space, param)
    return a_double_coset(space, param)


def family_params(G: PGL2, kind: SubgroupKind | str) -> list[int]:
    kind = SubgroupKind(kind)
    if kind is SubgroupKind.K:
        return k_params(G.f)
    if kind is SubgroupKind.U:
        return u_params(G.f)
    return a_params(G.f, G.delta)
