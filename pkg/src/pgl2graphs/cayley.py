"""Cayley graphs Cay(G/H, HsH/H), structural analysis and the cusp graph X_P."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import AsymmetricCoset, CapExceeded
from .field_tower import DEFAULT_CAP, build_field
from .pgl2 import CosetSpace, DoubleCoset, PGL2, coset_space, family_double_coset

MAX_VERTICES = 20000


@dataclass(eq=False)
class Graph:
    n: int
    adjacency: np.ndarray = field(repr=False)
    family: str = ""
    q: int = 0
    param: int | None = None

    @property
    def adj_lists(self) -> list[list[int]]:
        return [list(np.nonzero(row)[0]) for row in self.adjacency]

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def k(self) -> int:
        """Common degree; raises if the graph is not regular."""
        d = self.degrees
        if self.n and not np.all(d == d[0]):
            raise ValueError("graph is not regular")
        return int(d[0]) if self.n else 0

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(a), int(b)) for a, b in zip(i, j)]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "param": self.param,
            "n": self.n,
            "k": self.k,
            "edges": [list(e) for e in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        name = f"{self.family}_{self.q}_{self.param}".replace("-", "m")
        lines = [f"graph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {i} -- {j};" for i, j in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        n = int(d["n"])
        A = np.zeros((n, n), dtype=np.int64)
        for i, j in d["edges"]:
            if i == j:
                raise ValueError("self-loop in graph file")
            A[i, j] = A[j, i] = 1
        g = cls(n, A, d.get("family", ""), int(d.get("q", 0)), d.get("param"))
        if "k" in d and g.n and g.k != int(d["k"]):
            raise ValueError("declared degree does not match edges")
        return g

    @classmethod
    def from_json(cls, s: str) -> "Graph":
        return cls.from_dict(json.loads(s))


@dataclass
class StructureReport:
    n: int
    k: int
    components: int
    bipartite: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "components": self.components, "bipartite": self.bipartite}


def build_graph(space: CosetSpace, dc: DoubleCoset, family: str = "", param=None) -> Graph:
    """Vertices are the cosets of `space`; xH ~ x x_i H for each coset x_i H in dc."""
    if not dc.symmetric:
        raise AsymmetricCoset(f"{dc.label} is not symmetric")
    G = space.group
    n = len(space)
    gens = [space.reps[i] for i in dc.coset_indices]
    A = np.zeros((n, n), dtype=np.int64)
    for i, r in enumerate(space.reps):
        for x in gens:
            A[i, space.index_of[G.mul(r, x)]] += 1
    assert np.array_equal(A, A.T), "adjacency must be symmetric"
    assert not np.any(np.diag(A)), "unexpected self-loop"
    assert A.max() <= 1, "unexpected multi-edge"
    return Graph(n, A, family or space.kind.value.lower(), G.q, param)


def family_graph(G: PGL2, family: str, param: int, space: CosetSpace | None = None) -> Graph:
    """Build X_{K_c}, X_{U_t} or X_{A_c}; family is one of k, u, a."""
    space = space or coset_space(G, family.upper())
    dc = family_double_coset(space, param)
    return build_graph(space, dc, family.lower(), param)


def components(g: Graph) -> list[int]:
    """Component label of each vertex (BFS, labels in order of discovery)."""
    label = [-1] * g.n
    adj = g.adj_lists
    c = 0
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = c
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if label[u] < 0:
                    label[u] = c
                    queue.append(u)
        c += 1
    return label


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    adj = g.adj_lists
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def analyze(g: Graph) -> StructureReport:
    labels = components(g)
    return StructureReport(g.n, g.k, max(labels) + 1 if labels else 0, is_bipartite(g))


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    idx = np.array(vertices, dtype=np.int64)
    return Graph(len(idx), g.adjacency[np.ix_(idx, idx)].copy(), g.family, g.q, g.param)


def component_of(g: Graph, v: int) -> Graph:
    labels = components(g)
    return induced_subgraph(g, [i for i, l in enumerate(labels) if l == labels[v]])


# -- cusp graph --

def cusp_vertices(f, p: int) -> list[tuple[int, int]]:
    """Nonzero column vectors over F_q modulo F_p^x, one canonical vector per class."""
    units = range(1, p)
    out = set()
    for a in range(f.q):
        for b in range(f.q):
            if a or b:
                out.add(min((f.mul(l, a), f.mul(l, b)) for l in units))
    return sorted(out)


def build_cusp_graph(p: int, e: int = 1, cap: int = DEFAULT_CAP) -> Graph:
    """X_P: two classes u, v are adjacent iff (u | v) = (gamma(0,1), gamma(1,0)) for
    some gamma in GL_2(F_q) with det gamma in F_p^x."""
    f = build_field(p, e, cap)
    q = f.q
    n_expected = (q * q - 1) // (p - 1)
    if n_expected > MAX_VERTICES:
        raise CapExceeded(f"cusp graph with {n_expected} vertices exceeds {MAX_VERTICES}")
    verts = cusp_vertices(f, p)
    index = {}
    units = range(1, p)
    for i, (a, b) in enumerate(verts):
        for l in units:
            index[(f.mul(l, a), f.mul(l, b))] = i
    prime_units = set(range(1, p))
    A = np.zeros((len(verts), len(verts)), dtype=np.int64)
    cols = [(a, b) for a in range(q) for b in range(q) if a or b]
    for a, c in cols:  # first column gamma(1,0)
        for b, d in cols:  # second column gamma(0,1)
            det = f.sub(f.mul(a, d), f.mul(b, c))
            if det in prime_units:
                i, j = index[(b, d)], index[(a, c)]
                A[i, j] = A[j, i] = 1
    assert not np.any(np.diag(A))
    return Graph(len(verts), A, "cusp", q, None)
