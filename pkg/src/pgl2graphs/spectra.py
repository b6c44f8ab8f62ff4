"""Dense symmetric eigensolver, spectrum reports and Ramanujan certification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CardinalityMismatch, NoConvergence, NotSymmetric

MAX_N = 20000


def _check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric("matrix must be square")
    if A.shape[0] > MAX_N:
        raise ValueError(f"n = {A.shape[0]} exceeds {MAX_N}")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * scale):
        raise NotSymmetric("matrix is not symmetric")
    return A


def householder_tridiagonalize(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a symmetric matrix to tridiagonal form by Householder reflections.

    Returns (diagonal, off-diagonal) with len(off) == n - 1.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    for k in range(n - 2):
        x = A[k + 1 :, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        alpha = -math.copysign(nx, x[0])
        v = x.copy()
        v[0] -= alpha
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v /= nv
        S = A[k + 1 :, k + 1 :]
        p = S @ v
        w = p - (v @ p) * v
        S -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        A[k + 1 :, k] = 0.0
        A[k, k + 1 :] = 0.0
        A[k + 1, k] = A[k, k + 1] = alpha
    return np.diag(A).copy(), np.diag(A, 1).copy()


def tridiagonal_ql(d, e, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of a symmetric tridiagonal matrix by QL with implicit Wilkinson-type shifts."""
    d = [float(x) for x in d]
    n = len(d)
    if n == 0:
        return np.zeros(0)
    e = [float(x) for x in e] + [0.0]
    cap = 30 * n if max_sweeps is None else max_sweeps
    eps = np.finfo(float).eps
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > cap:
                raise NoConvergence(f"QL iteration exceeded {cap} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d)


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi rotations; slow reference implementation for cross-validation."""
    A = _check_symmetric(A).copy()
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2))
        if off <= tol * max(1.0, np.linalg.norm(A)):
            return np.sort(np.diag(A))[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
    raise NoConvergence("Jacobi did not converge")


def sym_eigenvalues(A: np.ndarray, method: str = "householder") -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, sorted descending."""
    A = _check_symmetric(A)
    if method == "jacobi":
        return jacobi_eigenvalues(A)
    if method != "householder":
        raise ValueError(f"unknown method {method!r}")
    d, e = householder_tridiagonalize(A)
    return np.sort(tridiagonal_ql(d, e))[::-1]


def inverse_iteration(A: np.ndarray, lam: float, iters: int = 4, seed: int = 0) -> np.ndarray:
    """An approximate unit eigenvector for the eigenvalue lam."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    shift = lam + 1e-10 * max(1.0, abs(lam))
    M = A - shift * np.eye(n)
    for _ in range(iters):
        try:
            x = np.linalg.solve(M, x)
        except np.linalg.LinAlgError:
            M = M + 1e-12 * np.eye(n)
            x = np.linalg.solve(M, x)
        x /= np.linalg.norm(x)
    return x


def eigen_residual(A: np.ndarray, lam: float, v: np.ndarray) -> float:
    return float(np.linalg.norm(A @ v - lam * v) / np.linalg.norm(v))


def cluster(values, tol: float) -> list[tuple[float, int]]:
    """Group sorted-descending values into (mean, multiplicity) runs."""
    out: list[list] = []
    for x in sorted(values, reverse=True):
        if out and abs(out[-1][2] - x) <= tol:
            out[-1][0] += x
            out[-1][1] += 1
            out[-1][2] = x
        else:
            out.append([x, 1, x])
    return [(s / m, m) for s, m, _ in out]


@dataclass
class SpectrumReport:
    eigenvalues: list = field(repr=False)
    clustered: list
    k: int
    q: int
    trivial_set: list
    max_nontrivial_abs: float
    ramanujan_bound: float
    paper_bound: float

    def to_dict(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues,
            "clustered": [[v, m] for v, m in self.clustered],
            "k": self.k,
            "q": self.q,
            "trivial_set": self.trivial_set,
            "max_nontrivial_abs": self.max_nontrivial_abs,
            "ramanujan_bound": self.ramanujan_bound,
            "paper_bound": self.paper_bound,
        }


@dataclass
class CertResult:
    ramanujan: bool
    paper_bound_holds: bool


def nontrivial(eigs, k: int, tol: float | None = None) -> list[float]:
    tol = 1e-8 * k if tol is None else tol
    return [x for x in eigs if abs(x) < k - tol]


def spectrum_report(graph, eigenvalues=None, method: str = "householder") -> SpectrumReport:
    k = graph.k
    eigs = sym_eigenvalues(graph.adjacency, method) if eigenvalues is None else np.asarray(eigenvalues)
    eigs = [float(x) for x in sorted(eigs, reverse=True)]
    tol = 1e-8 * k
    trivial = [x for x in eigs if abs(x) >= k - tol]
    nt = nontrivial(eigs, k, tol)
    return SpectrumReport(
        eigenvalues=eigs,
        clustered=cluster(eigs, 1e-6 * max(k, 1)),
        k=k,
        q=graph.q,
        trivial_set=trivial,
        max_nontrivial_abs=max((abs(x) for x in nt), default=0.0),
        ramanujan_bound=2.0 * math.sqrt(max(k - 1, 0)),
        paper_bound=2.0 * math.sqrt(graph.q),
    )


def certify(rep: SpectrumReport) -> CertResult:
    tol = 1e-8 * rep.k
    m = rep.max_nontrivial_abs
    return CertResult(m <= rep.ramanujan_bound + tol, m <= rep.paper_bound + tol)


def closed_walk_counts(adj_lists: list[list[int]], max_len: int = 4) -> list[int]:
    """trace(A^m) for m = 0..max_len, by propagating walk counts along adjacency lists."""
    n = len(adj_lists)
    C = np.eye(n, dtype=np.int64)
    out = [n]
    for _ in range(max_len):
        C = np.stack([C[nb].sum(axis=0) if nb else np.zeros(n, dtype=np.int64) for nb in adj_lists])
        out.append(int(np.trace(C)))
    return out


def moment_check(graph, eigenvalues, max_len: int = 4) -> bool:
    walks = closed_walk_counts(graph.adj_lists, max_len)
    lam = np.asarray(eigenvalues, dtype=float)
    k = max(graph.k, 1)
    return all(
        abs(float(np.sum(lam**m)) - walks[m]) <= 1e-6 * graph.n * k**m for m in range(max_len + 1)
    )


@dataclass
class MatchReport:
    success: bool
    max_distance: float
    worst_pair: tuple
    n: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "max_distance": self.max_distance,
            "worst_pair": list(self.worst_pair),
            "n": self.n,
            "tol": self.tol,
        }


def match_multiset(computed, predicted, tol: float = 1e-6) -> MatchReport:
    a = sorted(float(x) for x in computed)
    b = sorted(float(x) for x in predicted)
    if len(a) != len(b):
        raise CardinalityMismatch(f"{len(a)} computed vs {len(b)} predicted values")
    worst, pair = 0.0, (math.nan, math.nan)
    for x, y in zip(a, b):
        if abs(x - y) >= worst:
            worst, pair = abs(x - y), (x, y)
    return MatchReport(worst <= tol, worst, pair, len(a), tol)


def is_submultiset(sub, sup, tol: float = 1e-6) -> bool:
    """Whether every value of `sub` can be paired with a distinct value of `sup`."""
    a = sorted(float(x) for x in sub)
    b = sorted(float(x) for x in sup)
    j = 0
    for x in a:
        while j < len(b) and b[j] < x - tol:
            j += 1
        if j == len(b) or abs(b[j] - x) > tol:
            return False
        j += 1
    return True
