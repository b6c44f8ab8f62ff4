"""Additive, multiplicative and torus characters, Gauss sums and epsilon factors.

Character values are complex doubles read off precomputed root-of-unity tables.
Multiplicative characters are chi_j(g^k) = zeta_{q-1}^{jk}; torus characters are
Lambda_j(h^k) = zeta_{q+1}^{jk} with h the chosen generator of E^x, so they are
trivial on F^x = <h^(q+1)>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EvalAtZero, InvalidParam, TrivialPsi
from .field_tower import ExtFieldTable, FieldTable, build_ext


@dataclass(frozen=True)
class MultChar:
    j: int


@dataclass(frozen=True)
class AddChar:
    a: int


@dataclass(frozen=True)
class TorusChar:
    j: int


@dataclass(frozen=True)
class Rep:
    """An irreducible representation of PGL_2(F_q) of degree > 1.

    kind is "discrete" (param indexes a torus character Lambda), "principal"
    or "steinberg" (param indexes a multiplicative character mu).
    """

    kind: str
    param: int

    @property
    def label(self) -> str:
        sym = "Lambda" if self.kind == "discrete" else "mu"
        return f"{self.kind}({sym}_{self.param})"


def roots_of_unity(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


class CharacterGroup:
    """Character tables attached to a field F_q and its quadratic extension."""

    def __init__(self, f: FieldTable, E: ExtFieldTable | None = None):
        self.f = f
        self.q = q = f.q
        self.p = f.p
        self.E = E if E is not None else build_ext(f)
        self.zeta_mult = roots_of_unity(q - 1)
        self.zeta_torus = roots_of_unity(q + 1)
        self.zeta_add = roots_of_unity(f.p)
        self._flog = np.array(f.log_table, dtype=np.int64)
        self._flog[0] = 0
        self._elog = self.E.log_table.copy()
        self._elog[0] = 0
        self._tr = f.abs_trace_table
        self.nu = MultChar((q - 1) // 2)

    # -- value arrays (indexed by field element) --
    @lru_cache(maxsize=None)
    def mult_values(self, j: int) -> np.ndarray:
        """chi_j on all of F, with the value 0 at 0."""
        v = self.zeta_mult[(j * self._flog) % (self.q - 1)]
        v[0] = 0
        v.flags.writeable = False
        return v

    @lru_cache(maxsize=None)
    def add_values(self, a: int) -> np.ndarray:
        f = self.f
        xs = np.array([f.mul(a, x) for x in range(self.q)], dtype=np.int64)
        v = self.zeta_add[self._tr[xs]]
        v.flags.writeable = False
        return v

    @lru_cache(maxsize=None)
    def torus_values(self, j: int) -> np.ndarray:
        """Lambda_j on all of E, with the value 0 at 0."""
        v = self.zeta_torus[(j * self._elog) % (self.q + 1)]
        v[0] = 0
        v.flags.writeable = False
        return v

    # -- pointwise evaluation --
    def eval_mult(self, chi: MultChar, x: int, zero_ext: bool = False) -> complex:
        if x == 0:
            if zero_ext:
                return 0j
            raise EvalAtZero("multiplicative character evaluated at 0")
        return complex(self.mult_values(chi.j % (self.q - 1))[x])

    def eval_add(self, psi: AddChar, x: int) -> complex:
        return complex(self.add_values(psi.a)[x])

    def eval_torus(self, lam: TorusChar, z: int) -> complex:
        if z == 0:
            raise EvalAtZero("torus character evaluated at 0")
        return complex(self.torus_values(lam.j % (self.q + 1))[z])

    # -- Gauss sums --
    def gauss_sum(self, chi: MultChar, psi: AddChar) -> complex:
        if psi.a == 0:
            raise TrivialPsi("Gauss sum needs a nontrivial additive character")
        return complex(self.gauss_table(psi.a)[chi.j % (self.q - 1)])

    @lru_cache(maxsize=None)
    def gauss_table(self, a: int) -> np.ndarray:
        """Gamma(chi_j, psi^a) for j = 0..q-2."""
        if a == 0:
            raise TrivialPsi("Gauss sum needs a nontrivial additive character")
        psi = self.add_values(a)
        out = np.array([np.sum(self.mult_values(j)[1:] * psi[1:]) for j in range(self.q - 1)])
        out.flags.writeable = False
        return out

    def gauss_sum_ext(self, lam: TorusChar, chi: MultChar, psi: AddChar) -> complex:
        """Sum over z in E^x of Lambda(z) chi(N z) psi(tr z)."""
        if psi.a == 0:
            raise TrivialPsi("Gauss sum needs a nontrivial additive character")
        return complex(self.gauss_ext_table(lam.j % (self.q + 1), psi.a)[chi.j % (self.q - 1)])

    @lru_cache(maxsize=None)
    def gauss_ext_table(self, lam_j: int, a: int) -> np.ndarray:
        E = self.E
        lam = self.torus_values(lam_j)[1:]
        psi_tr = self.add_values(a)[E.trace_table[1:]]
        base = lam * psi_tr
        nz = E.norm_table[1:]
        out = np.array([np.sum(base * self.mult_values(j)[nz]) for j in range(self.q - 1)])
        out.flags.writeable = False
        return out

    # -- representations --
    def check_rep(self, rep: Rep) -> None:
        q = self.q
        if rep.kind == "discrete":
            if (2 * rep.param) % (q + 1) == 0:
                raise InvalidParam("discrete series needs Lambda^2 != 1")
        elif rep.kind == "principal":
            if (2 * rep.param) % (q - 1) == 0:
                raise InvalidParam("principal series needs mu^2 != 1")
        elif rep.kind == "steinberg":
            if (2 * rep.param) % (q - 1) != 0:
                raise InvalidParam("Steinberg representation needs mu^2 = 1")
        else:
            raise InvalidParam(f"unknown representation kind {rep.kind!r}")

    def epsilon_factor(self, rep: Rep, chi: MultChar, psi: AddChar) -> complex:
        return complex(self.epsilon_table(rep, psi.a)[chi.j % (self.q - 1)])

    @lru_cache(maxsize=None)
    def epsilon_table(self, rep: Rep, a: int) -> np.ndarray:
        """epsilon(rep, chi_j, psi^a) for j = 0..q-2."""
        self.check_rep(rep)
        if a == 0:
            raise TrivialPsi("epsilon factor needs a nontrivial additive character")
        n = self.q - 1
        if rep.kind == "discrete":
            out = -self.gauss_ext_table(rep.param % (self.q + 1), a)
        else:
            G = self.gauss_table(a)
            js = np.arange(n)
            out = G[(rep.param + js) % n] * G[(-rep.param + js) % n]
        out = np.array(out)
        out.flags.writeable = False
        return out

    def norm_one_sum(self, lam: TorusChar) -> complex:
        """Sum of Lambda(1 + z) over norm-one z != -1."""
        q = self.q
        if (2 * lam.j) % (q + 1) == 0:
            raise InvalidParam("need Lambda^2 != 1")
        E = self.E
        vals = self.torus_values(lam.j % (q + 1))
        minus_one = self.f.minus_one
        total = 0j
        for z in E.norm_one():
            if z != minus_one:
                total += vals[E.add(1, z)]
        return total

    # -- inventories --
    def discrete_params(self) -> list[int]:
        """One Lambda_j per equivalence class {Lambda, Lambda^q}."""
        return list(range(1, (self.q - 1) // 2 + 1))

    def principal_params(self) -> list[int]:
        """One mu_j per class {mu, mu^-1}, mu^2 != 1."""
        return list(range(1, (self.q - 3) // 2 + 1))

    def steinberg_params(self) -> list[int]:
        return [0, (self.q - 1) // 2]

    def reps(self) -> list[Rep]:
        return (
            [Rep("discrete", j) for j in self.discrete_params()]
            + [Rep("steinberg", j) for j in self.steinberg_params()]
            + [Rep("principal", j) for j in self.principal_params()]
        )

    def inventory(self) -> dict:
        q = self.q
        return {
            "q": q,
            "discrete": len(self.discrete_params()),
            "steinberg": len(self.steinberg_params()),
            "principal": len(self.principal_params()),
            "degree_one": 2,
            "degrees": {"discrete": q - 1, "steinberg": q, "principal": q + 1, "degree_one": 1},
            "discrete_params": self.discrete_params(),
            "steinberg_params": self.steinberg_params(),
            "principal_params": self.principal_params(),
        }

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other
