"""Kirillov models of the irreducible representations of PGL_2(F_q) of degree > 1.

Basis of a model: the multiplicative characters chi_0..chi_{q-2} (position j),
followed by D_0 (Steinberg and principal series) and D_inf (principal series).
Generator actions are transcribed column by column, so rep_matrix(g1 g2) equals
rep_matrix(g1) @ rep_matrix(g2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .characters import CharacterGroup, Rep
from .errors import InvalidParam, NotFixed, RankMismatch, ZeroFunction, ZeroParam
from .pgl2 import PGL2, CosetSpace, Elem, SubgroupKind

RANK_TOL = 1e-8


@dataclass(frozen=True)
class BruhatForm:
    """g = u_{x1} h_y (when w_part is False) or g = u_{x1} h_y w u_{x2}."""

    x1: int
    y: int
    w_part: bool
    x2: int = 0


def bruhat(G: PGL2, g: Elem) -> BruhatForm:
    f = G.f
    a, b, c, d = g
    if c == 0:
        return BruhatForm(f.div(b, d), f.div(a, d), False)
    c2 = f.mul(c, c)
    return BruhatForm(f.div(a, c), f.div(G.det(g), c2), True, f.div(d, c))


def recompose(G: PGL2, bf: BruhatForm) -> Elem:
    g = G.mul(G.u(bf.x1), G.h(bf.y))
    if bf.w_part:
        g = G.mul(G.mul(g, G.w), G.u(bf.x2))
    return g


class RepInstance:
    """A representation `rep` realized on its Kirillov model for psi = psi^a."""

    def __init__(self, chars: CharacterGroup, rep: Rep, a: int = 1):
        chars.check_rep(rep)
        if a == 0:
            raise InvalidParam("Kirillov model needs a nontrivial additive character")
        self.chars = chars
        self.rep = rep
        self.a = a
        self.q = q = chars.q
        self.n = q - 1
        self.kind = rep.kind
        self.i_d0 = self.n if rep.kind in ("steinberg", "principal") else None
        self.i_dinf = self.n + 1 if rep.kind == "principal" else None
        self.dim = {"discrete": q - 1, "steinberg": q, "principal": q + 1}[rep.kind]
        self._eps = chars.epsilon_table(rep, a)
        self._gauss = chars.gauss_table(a)
        self._cache: dict = {}

    @property
    def mu(self) -> int:
        return self.rep.param

    def eps(self, j: int) -> complex:
        return self._eps[j % self.n]

    def value_at_one(self, v: np.ndarray) -> complex:
        """Evaluate a Kirillov vector at 1: characters are 1 there, D_0 and D_inf vanish."""
        return complex(np.sum(v[..., : self.n], axis=-1)) if v.ndim == 1 else np.sum(v[..., : self.n], axis=-1)

    # -- generator actions --
    def act_h(self, r: int) -> np.ndarray:
        if r == 0:
            raise ZeroParam("h_r needs r != 0")
        key = ("h", r)
        if key not in self._cache:
            ch = self.chars
            diag = np.zeros(self.dim, dtype=complex)
            k = ch.f.log_table[r]
            diag[: self.n] = ch.zeta_mult[(np.arange(self.n) * k) % self.n]
            if self.i_d0 is not None:
                diag[self.i_d0] = ch.zeta_mult[(self.mu * k) % self.n]
            if self.i_dinf is not None:
                diag[self.i_dinf] = ch.zeta_mult[(-self.mu * k) % self.n]
            self._cache[key] = np.diag(diag)
        return self._cache[key]

    def act_u(self, s: int) -> np.ndarray:
        if s == 0:
            return np.eye(self.dim, dtype=complex)
        key = ("u", s)
        if key not in self._cache:
            ch = self.chars
            n = self.n
            k = ch.f.log_table[s]
            beta = np.arange(n)[:, None]
            alpha = np.arange(n)[None, :]
            M = np.eye(self.dim, dtype=complex)
            M[:n, :n] = ch.zeta_mult[((beta - alpha) * k) % n] * self._gauss[(alpha - beta) % n] / n
            self._cache[key] = M
        return self._cache[key]

    def act_w(self) -> np.ndarray:
        if "w" not in self._cache:
            q, n, mu = self.q, self.n, self.mu
            M = np.zeros((self.dim, self.dim), dtype=complex)
            for j in range(n):
                M[(-j) % n, j] += self.eps(j) / q
                if self.kind == "steinberg" and (j + mu) % n == 0:
                    M[self.i_d0, j] += -self.eps(j) * (q * q - 1) / q
                elif self.kind == "principal":
                    if (j + mu) % n == 0:
                        M[self.i_d0, j] += -self.eps(j) * (q - 1) / q
                    if (j - mu) % n == 0:
                        M[self.i_dinf, j] += -self.eps(j) * (q - 1) / q
            if self.kind == "steinberg":
                coef = -self.eps(-mu) / q
                M[(-mu) % n, self.i_d0] += coef
                M[self.i_d0, self.i_d0] += coef
            elif self.kind == "principal":
                coef = -self.eps(mu) / q
                M[(-mu) % n, self.i_d0] += coef
                M[self.i_dinf, self.i_d0] += coef
                coef = -self.eps(-mu) / q
                M[mu % n, self.i_dinf] += coef
                M[self.i_d0, self.i_dinf] += coef
            self._cache["w"] = M
        return self._cache["w"]

    def rep_matrix(self, G: PGL2, g: Elem) -> np.ndarray:
        bf = bruhat(G, g)
        M = self.act_u(bf.x1) @ self.act_h(bf.y)
        if bf.w_part:
            M = M @ self.act_w() @ self.act_u(bf.x2)
        return M

    def __repr__(self):
        return f"RepInstance({self.rep.label}, psi^{self.a}, q={self.q})"


# -- H-fixed vectors --

def expected_fixed_dim(rep: Rep, kind: SubgroupKind | str) -> int:
    """dim of the H-fixed vectors of rep, per H in {K, U, A}."""
    kind = SubgroupKind(kind)
    if kind is SubgroupKind.K:
        return 0 if (rep.kind == "steinberg" and rep.param == 0) else 1
    if kind is SubgroupKind.U:
        return {"discrete": 0, "steinberg": 1, "principal": 2}[rep.kind]
    return 2 if (rep.kind == "steinberg" and rep.param == 0) else 1


def projector(ri: RepInstance, G: PGL2, kind: SubgroupKind | str) -> np.ndarray:
    H = G.subgroup_elements(kind)
    return sum(ri.rep_matrix(G, h) for h in H) / len(H)


def fixed_vectors(ri: RepInstance, G: PGL2, kind: SubgroupKind | str, check: bool = True) -> np.ndarray:
    """Orthonormal basis (as columns) of the H-fixed subspace."""
    P = projector(ri, G, kind)
    U, s, _ = np.linalg.svd(P)
    r = int(np.sum(s > RANK_TOL))
    if check and r != expected_fixed_dim(ri.rep, kind):
        raise RankMismatch(f"{ri}: rank {r} for H={SubgroupKind(kind).value}")
    return U[:, :r]


def whittaker_lift(ri: RepInstance, v: np.ndarray, space: CosetSpace, check: bool = True) -> np.ndarray:
    """W_v(gH) = (pi(g) v)(1) for each coset representative g."""
    G = space.group
    if check:
        for h in space.subgroup:
            if not np.allclose(ri.rep_matrix(G, h) @ v, v, atol=1e-9):
                raise NotFixed("vector is not fixed by H")
    return np.array([ri.value_at_one(ri.rep_matrix(G, g) @ v) for g in space.reps])


def hecke_matrix(ri: RepInstance, G: PGL2, space: CosetSpace, coset_indices) -> np.ndarray:
    """Sum of pi(x_i) over the cosets x_i H of a double coset."""
    return sum(ri.rep_matrix(G, space.reps[i]) for i in coset_indices)


def hecke_eigenvalues(ri: RepInstance, space: CosetSpace, coset_indices) -> np.ndarray:
    """Eigenvalues of T_{HsH} on the H-fixed vectors of ri (d_pi of them)."""
    G = space.group
    V = fixed_vectors(ri, G, space.kind)
    if V.shape[1] == 0:
        return np.zeros(0, dtype=complex)
    B = hecke_matrix(ri, G, space, coset_indices)
    C = V.conj().T @ B @ V
    return np.linalg.eigvals(C)


# -- W_Lambda on the split torus --

def w_lambda_closed_form(chars: CharacterGroup, lam_j: int, y: int) -> complex:
    """W_Lambda(h_y) from its closed form; equals q + 1 at y = 1."""
    q = chars.q
    if (2 * lam_j) % (q + 1) == 0:
        raise InvalidParam("need Lambda^2 != 1")
    if y == 0:
        raise ZeroParam("y must be nonzero")
    E, f = chars.E, chars.f
    lam = chars.torus_values(lam_j % (q + 1))
    G_lam = complex(np.sum(lam[1:] * chars.add_values(1)[E.trace_table[1:]]))
    if y == 1:
        from .characters import TorusChar

        return -G_lam * chars.norm_one_sum(TorusChar(lam_j)) / q + q
    half = f.inv(f.from_int(2))
    yh = f.mul(f.add(y, 1), half)  # (y + 1) / 2
    total = 0j
    for z in np.nonzero(E.norm_table == y)[0]:
        arg = E.add(1, E.scale(yh, E.inv(int(z))))
        total += np.conj(lam[arg])
    return -G_lam * total / q


def k_fixed_seed(ri: RepInstance, G: PGL2) -> np.ndarray:
    """v_{pi,psi}: the sum over K of pi(k) applied to the sum of all characters."""
    theta_sum = np.zeros(ri.dim, dtype=complex)
    theta_sum[: ri.n] = 1.0
    return sum(ri.rep_matrix(G, k) @ theta_sum for k in G.subgroup_elements(SubgroupKind.K))


def w_lambda_via_lifts(chars: CharacterGroup, G: PGL2, lam_j: int, gs) -> np.ndarray:
    """W_Lambda(g) = sum over psi^a, a != 0, of (q-1)^-1 (pi(g) v_{pi,psi^a})(1)."""
    q = chars.q
    out = np.zeros(len(gs), dtype=complex)
    for a in range(1, q):
        ri = RepInstance(chars, Rep("discrete", lam_j), a)
        v = k_fixed_seed(ri, G)
        out += np.array([ri.value_at_one(ri.rep_matrix(G, g) @ v) for g in gs]) / (q - 1)
    return out


# -- explicit eigenfunctions on the coset graphs --

def verify_eigenpair(graph, fvals, lam) -> float:
    fvals = np.asarray(fvals, dtype=complex)
    nf = np.linalg.norm(fvals)
    if nf == 0:
        raise ZeroFunction("eigenfunction candidate is zero")
    return float(np.linalg.norm(graph.adjacency @ fvals - lam * fvals) / nf)


def k_f_mu(chars: CharacterGroup, space: CosetSpace, mu: int) -> np.ndarray:
    """f_mu((y x; 0 1) k) = mu(y) on G/K."""
    G = space.group
    f = G.f
    K = space.subgroup
    mv = chars.mult_values(mu % (chars.q - 1))
    out = np.zeros(len(space), dtype=complex)
    for i, r in enumerate(space.reps):
        for k in K:
            a, b, c, d = G.mul(r, k)
            if c == 0:
                out[i] = mv[f.div(a, d)]
                break
    return out


def u_g_h_mu(chars: CharacterGroup, space: CosetSpace, mu: int) -> tuple[np.ndarray, np.ndarray]:
    """g_mu(h_y U) = mu(y) (zero off AU) and h_mu(u_x h_y w U) = mu(y) (zero on AU)."""
    G = space.group
    f = G.f
    mv = chars.mult_values(mu % (chars.q - 1))
    g = np.zeros(len(space), dtype=complex)
    h = np.zeros(len(space), dtype=complex)
    for i, r in enumerate(space.reps):
        a, b, c, d = r
        if c == 0:
            g[i] = mv[f.div(a, d)]
        else:
            h[i] = mv[bruhat(G, r).y]
    return g, h


def a_cells(space: CosetSpace) -> np.ndarray:
    """0 for UA, 1 for UA(0 1; -1 1)A, 2 for UAwA."""
    out = np.zeros(len(space), dtype=np.int64)
    for i, (a, b, c, d) in enumerate(space.reps):
        out[i] = 0 if c == 0 else (2 if d == 0 else 1)
    return out


def a_f_mu(chars: CharacterGroup, space: CosetSpace, mu: int) -> np.ndarray:
    """f_mu((y x; 0 1)(0 1; -1 1) A) = mu(y), zero on the other two cells."""
    G = space.group
    f = G.f
    mv = chars.mult_values(mu % (chars.q - 1))
    out = np.zeros(len(space), dtype=complex)
    for i, (a, b, c, d) in enumerate(space.reps):
        if c != 0 and d != 0:
            out[i] = mv[f.div(f.neg(G.det((a, b, c, d))), f.mul(c, d))]
    return out


def a_cell_indicators(space: CosetSpace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(f1, f2, f3): indicators of UA, UA(0 1; -1 1)A and UAwA."""
    cells = a_cells(space)
    return tuple((cells == c).astype(complex) for c in (0, 1, 2))


def basis_vector(ri: RepInstance, which) -> np.ndarray:
    """Unit vector for a character index j, or for "D0" / "Dinf"."""
    v = np.zeros(ri.dim, dtype=complex)
    idx = {"D0": ri.i_d0, "Dinf": ri.i_dinf}.get(which, which)
    if idx is None:
        raise InvalidParam(f"{ri} has no basis vector {which!r}")
    v[idx] = 1.0
    return v


def u_principal_eigenfunctions(ri: RepInstance, space: CosetSpace, t: int) -> list[tuple[float, np.ndarray]]:
    """(+-sqrt q, +-sqrt q eps(pi, mu, psi)^-1 mu(t) W_{D_0} - W_{D_inf}) on G/U."""
    if ri.kind != "principal":
        raise InvalidParam("needs a principal series representation")
    WD = whittaker_lift(ri, basis_vector(ri, "D0"), space)
    WI = whittaker_lift(ri, basis_vector(ri, "Dinf"), space)
    coef = np.sqrt(ri.q) * ri.chars.mult_values(ri.mu % ri.n)[t] / ri.eps(ri.mu)
    return [(s * np.sqrt(ri.q), s * coef * WD - WI) for s in (1.0, -1.0)]


def a_steinberg1_eigenfunctions(ri: RepInstance, space: CosetSpace) -> list[tuple[float, np.ndarray]]:
    """The two pi_1 eigenfunctions on G/A: W_1 + (q+1) W_{D_0} for 0 and W_1 - (q-1) W_{D_0} for -2."""
    if ri.kind != "steinberg" or ri.mu % ri.n != 0:
        raise InvalidParam("needs the Steinberg representation pi_1")
    W1 = whittaker_lift(ri, basis_vector(ri, 0), space)
    WD = whittaker_lift(ri, basis_vector(ri, "D0"), space)
    q = ri.q
    return [(0.0, W1 + (q + 1) * WD), (-2.0, W1 - (q - 1) * WD)]
