"""Closed-form and character-sum eigenvalues of the K-, U- and A-graphs, and the
assembly of full predicted spectra: every irreducible pi contributes the eigenvalues
of the double-coset operator on its H-fixed vectors, each with multiplicity deg pi.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .characters import CharacterGroup, Rep
from .errors import DimensionMismatch, ForbiddenParam, InvalidParam, ZeroParam
from .pgl2 import PGL2, SubgroupKind, conic_solutions

IMAG_TOL = 1e-9


def _real(z: complex, what: str) -> float:
    if abs(complex(z).imag) > IMAG_TOL:
        raise ValueError(f"{what}: imaginary part {complex(z).imag:.3g} exceeds {IMAG_TOL}")
    return float(complex(z).real)


@dataclass
class PredictedSpectrum:
    entries: list = field(default_factory=list)  # (eigenvalue, multiplicity, source)

    def add(self, value, mult: int, source: str) -> None:
        self.entries.append((_real(value, source), int(mult), source))

    @property
    def total(self) -> int:
        return sum(m for _, m, _ in self.entries)

    def expanded(self) -> list[float]:
        return [v for v, m, _ in self.entries for _ in range(m)]

    def to_dict(self) -> dict:
        return {
            "entries": [{"value": v, "mult": m, "source": s} for v, m, s in self.entries],
            "total": self.total,
        }


@dataclass
class FixedSpaceDims:
    """(label, deg pi, d_pi) for every irreducible of PGL_2(F_q), per subgroup."""

    kind: SubgroupKind
    q: int
    rows: list

    @property
    def weighted_sum(self) -> int:
        return sum(deg * d for _, deg, d in self.rows)

    @property
    def square_sum(self) -> int:
        return sum(d * d for _, _, d in self.rows)

    def check(self) -> None:
        q = self.q
        index = {SubgroupKind.K: q * (q - 1), SubgroupKind.U: q * q - 1, SubgroupKind.A: q * (q + 1)}
        n_double = {SubgroupKind.K: q, SubgroupKind.U: 2 * (q - 1), SubgroupKind.A: q + 4}
        if self.weighted_sum != index[self.kind]:
            raise DimensionMismatch(f"sum deg*d = {self.weighted_sum}, expected {index[self.kind]}")
        if self.square_sum != n_double[self.kind]:
            raise DimensionMismatch(f"sum d^2 = {self.square_sum}, expected {n_double[self.kind]}")


_DIMS = {
    # trivial, sign, pi_1, pi_nu, principal, discrete
    SubgroupKind.K: (1, 0, 0, 1, 1, 1),
    SubgroupKind.U: (1, 1, 1, 1, 2, 0),
    SubgroupKind.A: (1, 0, 2, 1, 1, 1),
}


def fixed_space_dims(chars: CharacterGroup, kind: SubgroupKind | str) -> FixedSpaceDims:
    kind = SubgroupKind(kind)
    q = chars.q
    triv, sign, st1, stnu, prin, disc = _DIMS[kind]
    rows = [("trivial", 1, triv), ("sign", 1, sign)]
    rows += [(Rep("steinberg", 0).label, q, st1), (Rep("steinberg", (q - 1) // 2).label, q, stnu)]
    rows += [(Rep("principal", j).label, q + 1, prin) for j in chars.principal_params()]
    rows += [(Rep("discrete", j).label, q - 1, disc) for j in chars.discrete_params()]
    return FixedSpaceDims(kind, q, rows)


class Predictor:
    """Eigenvalue formulas for one field; psi = psi^a is the additive character used."""

    def __init__(self, chars: CharacterGroup, G: PGL2 | None = None, a: int = 1):
        self.chars = chars
        self.f = chars.f
        self.q = chars.q
        self.G = G if G is not None else PGL2(chars.f)
        self.delta = self.G.delta
        if chars.E.base is not self.f or self.delta != chars.E.delta:
            raise InvalidParam("character group and group use different quadratic extensions")
        self.a = a
        self._nt = None

    # -- K family --
    def _check_k(self, c: int) -> None:
        if c in (1, self.f.minus_one):
            raise ForbiddenParam("K_c needs c != +-1")

    def k_eigen_nondiscrete(self, mu: int, c: int) -> float:
        """Sum of mu(y) over the conic solutions (y, x)."""
        self._check_k(c)
        if mu % (self.q - 1) == 0:
            raise InvalidParam("mu must be nontrivial")
        mv = self.chars.mult_values(mu % (self.q - 1))
        return _real(sum(mv[y] for y, _ in conic_solutions(self.G, c)), "k_eigen_nondiscrete")

    def _by_norm_trace(self) -> dict:
        if self._nt is None:
            E = self.chars.E
            d = defaultdict(list)
            for z in range(1, E.order):
                d[(int(E.norm_table[z]), int(E.trace_table[z]))].append(z)
            self._nt = dict(d)
        return self._nt

    def s_yx(self, lam: int, y: int, x: int) -> complex:
        """-(sum over b in F, w in E^x with N w = y(b^2 - delta), tr w = -(y+1)b - delta x,
        of Lambda(w)) - [y == 1]."""
        q = self.q
        if (2 * lam) % (q + 1) == 0:
            raise InvalidParam("need Lambda^2 != 1")
        f = self.f
        lv = self.chars.torus_values(lam % (q + 1))
        nt = self._by_norm_trace()
        y1 = f.add(y, 1)
        dx = f.mul(self.delta, x)
        total = 0j
        for b in range(q):
            n = f.mul(y, f.sub(f.mul(b, b), self.delta))
            t = f.neg(f.add(f.mul(y1, b), dx))
            for w in nt.get((n, t), ()):
                total += lv[w]
        return -total - (1.0 if y == 1 else 0.0)

    def k_eigen_discrete(self, lam: int, c: int) -> float:
        self._check_k(c)
        sols = conic_solutions(self.G, c)
        return _real(sum(self.s_yx(lam, y, x) for y, x in sols) / (self.q + 1), "k_eigen_discrete")

    # -- U family --
    def u_predicted_spectrum(self, t: int) -> PredictedSpectrum:
        if t == 0:
            raise ZeroParam("U_t needs t != 0")
        q = self.q
        out = PredictedSpectrum()
        sgn = 1.0 if self.f.is_square(t) else -1.0
        out.add(q, 1, "trivial")
        out.add(sgn * q, 1, "sign")
        out.add(-1.0, q, Rep("steinberg", 0).label)
        out.add(-sgn, q, Rep("steinberg", (q - 1) // 2).label)
        for j in self.chars.principal_params():
            lab = Rep("principal", j).label
            out.add(math.sqrt(q), q + 1, lab)
            out.add(-math.sqrt(q), q + 1, lab)
        return out

    # -- A family --
    def _check_a(self, c: int) -> None:
        if c in (1, self.delta):
            raise ForbiddenParam("A_c needs c not in {1, delta}")

    def a_eigen_nondiscrete(self, mu: int, c: int) -> float:
        """Sum over x in F^x, x not in {1, (1-c)/(delta-c)}, of
        mu(x(delta-1) / ((x-1)(x(delta-c) - (1-c))))."""
        self._check_a(c)
        if mu % (self.q - 1) == 0:
            raise InvalidParam("mu must be nontrivial")
        f = self.f
        mv = self.chars.mult_values(mu % (self.q - 1))
        dc, oc, d1 = f.sub(self.delta, c), f.sub(1, c), f.sub(self.delta, 1)
        total = 0j
        for x in range(1, self.q):
            den = f.mul(f.sub(x, 1), f.sub(f.mul(x, dc), oc))
            if den:
                total += mv[f.div(f.mul(x, d1), den)]
        return _real(total, "a_eigen_nondiscrete")

    def a_eigen_generic(self, rep: Rep, c: int, a: int | None = None) -> float:
        """(q-1)^-1 q^-1 sum over beta of beta((1-c)/(1-delta)) Gamma(beta^-1, psi)^2 eps(pi, beta, psi)."""
        self._check_a(c)
        if rep.kind == "steinberg" and rep.param % (self.q - 1) == 0:
            raise InvalidParam("the Steinberg representation pi_1 has a 2-dimensional A-fixed space")
        a = self.a if a is None else a
        q, f, ch = self.q, self.f, self.chars
        n = q - 1
        r = f.div(f.sub(1, c), f.sub(1, self.delta))
        k = f.log_table[r]
        js = np.arange(n)
        beta_r = ch.zeta_mult[(js * k) % n]
        gam = ch.gauss_table(a)[(-js) % n]
        eps = ch.epsilon_table(rep, a)
        return _real(np.sum(beta_r * gam * gam * eps) / (n * q), f"a_eigen_generic({rep.label})")

    def a_kloosterman_discrete(self, lam: int, c: int, a: int | None = None) -> float:
        """Double-sum rewriting of a_eigen_generic for the discrete series."""
        self._check_a(c)
        a = self.a if a is None else a
        q, f, ch, E = self.q, self.f, self.chars, self.chars.E
        psi = ch.add_values(a)
        lv = ch.torus_values(lam % (q + 1))
        r = f.div(f.sub(1, c), f.sub(1, self.delta))
        kl = self._kloosterman_table(a)
        total = 0j
        for z in range(1, E.order):
            total += lv[z] * psi[E.trace_table[z]] * kl[f.mul(r, int(E.norm_table[z]))]
        return _real(-(q - 1) * total / ((q - 1) * q), "a_kloosterman_discrete")

    def a_kloosterman_principal(self, mu: int, c: int, a: int | None = None) -> float:
        """Triple-sum rewriting of a_eigen_generic for the principal series."""
        self._check_a(c)
        a = self.a if a is None else a
        q, f, ch = self.q, self.f, self.chars
        psi = ch.add_values(a)
        mv = ch.mult_values(mu % (q - 1))
        mvi = ch.mult_values((-mu) % (q - 1))
        r = f.div(f.sub(1, c), f.sub(1, self.delta))
        kl = self._kloosterman_table(a)
        total = 0j
        for u in range(1, q):
            for z in range(1, q):
                total += mv[u] * psi[u] * mvi[z] * psi[z] * kl[f.mul(r, f.mul(u, z))]
        return _real((q - 1) * total / ((q - 1) * q), "a_kloosterman_principal")

    def _kloosterman_table(self, a: int) -> np.ndarray:
        """K(m) = sum over x in F^x of psi(x + m/x)."""
        f, psi = self.f, self.chars.add_values(a)
        out = np.zeros(self.q, dtype=complex)
        for m in range(self.q):
            out[m] = sum(psi[f.add(x, f.div(m, x))] for x in range(1, self.q))
        return out

    def a_eigen_for(self, rep: Rep, c: int) -> float:
        if rep.kind == "discrete":
            return self.a_eigen_generic(rep, c)
        return self.a_eigen_nondiscrete(rep.param, c)

    # -- assembly --
    def assemble_predicted(self, family: str, param: int) -> PredictedSpectrum:
        kind = SubgroupKind(family.upper())
        q, ch = self.q, self.chars
        dims = fixed_space_dims(ch, kind)
        dims.check()
        if kind is SubgroupKind.U:
            out = self.u_predicted_spectrum(param)
        elif kind is SubgroupKind.K:
            self._check_k(param)
            out = PredictedSpectrum()
            out.add(q + 1, 1, "trivial")
            nu = (q - 1) // 2
            out.add(self.k_eigen_nondiscrete(nu, param), q, Rep("steinberg", nu).label)
            for j in ch.principal_params():
                out.add(self.k_eigen_nondiscrete(j, param), q + 1, Rep("principal", j).label)
            for j in ch.discrete_params():
                out.add(self.k_eigen_discrete(j, param), q - 1, Rep("discrete", j).label)
        else:
            self._check_a(param)
            out = PredictedSpectrum()
            out.add(q - 1, 1, "trivial")
            st1 = Rep("steinberg", 0).label
            for v in a_steinberg1_block(q).eigenvalues:
                out.add(v, q, st1)
            stnu = Rep("steinberg", (q - 1) // 2)
            out.add(self.a_eigen_for(stnu, param), q, stnu.label)
            for j in ch.principal_params():
                out.add(self.a_eigen_for(Rep("principal", j), param), q + 1, Rep("principal", j).label)
            for j in ch.discrete_params():
                out.add(self.a_eigen_for(Rep("discrete", j), param), q - 1, Rep("discrete", j).label)
        if out.total != dims.weighted_sum:
            raise DimensionMismatch(f"predicted total {out.total} != {dims.weighted_sum}")
        return out


@dataclass
class Block:
    matrix: np.ndarray
    eigenvalues: list
    eigenvectors: list  # coefficient vectors, one per eigenvalue
    basis: tuple

    def residuals(self) -> list[float]:
        """|| M v - lambda v || for each eigenpair (M acts on coefficient columns)."""
        return [float(np.linalg.norm(self.matrix @ v - lam * v)) for lam, v in zip(self.eigenvalues, self.eigenvectors)]


def a_psi0_block(q: int) -> Block:
    """T_{A_c} on the characteristic functions f1, f2, f3 of the three (U, A)-cells."""
    M = np.array([[0, q - 1, 0], [1, q - 3, 1], [0, q - 1, 0]], dtype=float)
    h = (1 - q) / 2
    vecs = [np.array([1.0, 0, -1]), np.array([1.0, 1, 1]), np.array([h, 1.0, h])]
    return Block(M, [0.0, float(q - 1), -2.0], vecs, ("f1", "f2", "f3"))


def a_steinberg1_block(q: int) -> Block:
    """T_{A_c} on the pi_1 Whittaker functions W_1, W_{D_0}."""
    M = np.array([[-(q + 1) / q, 1 / q], [(q * q - 1) / q, -(q - 1) / q]])
    vecs = [np.array([1.0, q + 1.0]), np.array([1.0, -(q - 1.0)])]
    return Block(M, [0.0, -2.0], vecs, ("W_1", "W_D0"))
