"""ADE Dynkin diagrams with fixed vertex labels and their spectral data."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import RankOutOfRange, UnknownFamily, UnknownVertex

_E_EDGES = {
    6: [(0, 1), (1, 2), (2, 5), (5, 4), (2, 3)],
    7: [(0, 1), (1, 2), (2, 3), (3, 6), (6, 5), (3, 4)],
    8: [(0, 1), (1, 2), (2, 3), (3, 4), (4, 7), (7, 6), (4, 5)],
}
_E_COXETER = {6: 12, 7: 18, 8: 30}

_SPEC_RE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*$")


@dataclass(frozen=True, eq=False)
class DynkinGraph:
    """A labelled ADE diagram.

    Vertex order is the label order; matrices indexed by vertices use it.
    """

    family: str
    rank: int
    vertices: tuple[str, ...]
    adjacency: np.ndarray
    bipartition: tuple[int, ...]
    coxeter_number: int
    distinguished_vertex: str = field(default="")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, label) -> int:
        """Position of a vertex label; accepts ``"e3"``, ``"3"`` or ``3``."""
        if isinstance(label, (int, np.integer)):
            if 0 <= int(label) < self.size:
                return int(label)
            raise UnknownVertex(f"{label!r} is not a vertex of {self.name}")
        s = str(label).strip()
        if s in self.vertices:
            return self.vertices.index(s)
        prefixed = self.family.lower() + s
        if prefixed in self.vertices:
            return self.vertices.index(prefixed)
        raise UnknownVertex(f"{label!r} is not a vertex of {self.name}")

    def degrees(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.adjacency.sum(axis=1))

    def __repr__(self) -> str:
        return f"DynkinGraph({self.name})"


def parse_spec(spec: str) -> tuple[str, int]:
    m = _SPEC_RE.match(str(spec))
    if not m:
        raise UnknownFamily(f"cannot parse diagram spec {spec!r}")
    fam, rank = m.group(1).upper(), int(m.group(2))
    if fam not in "ADE":
        raise UnknownFamily(f"unknown family {m.group(1)!r} (expected A, D or E)")
    return fam, rank


def build_diagram(spec: str) -> DynkinGraph:
    """Build the labelled diagram for a spec such as ``"A11"`` or ``"e8"``."""
    fam, r = parse_spec(spec)
    if fam == "A":
        if r < 1:
            raise RankOutOfRange(f"A{r}: rank must be >= 1")
        labels = [f"a{i}" for i in range(r)]
        edges = [(i, i + 1) for i in range(r - 1)]
        h = r + 1
    elif fam == "D":
        if r < 4:
            raise RankOutOfRange(f"D{r}: rank must be >= 4")
        labels = [f"d{i}" for i in range(r - 1)] + [f"d{r - 2}'"]
        # the two tails d_{r-2} and d_{r-2}' hang off d_{r-3}
        edges = [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
        h = 2 * r - 2
    else:
        if r not in _E_EDGES:
            raise RankOutOfRange(f"E{r}: rank must be 6, 7 or 8")
        labels = [f"e{i}" for i in range(r)]
        edges = _E_EDGES[r]
        h = _E_COXETER[r]
    adj = np.zeros((r, r), dtype=np.int64)
    for i, j in edges:
        adj[i, j] = adj[j, i] = 1
    adj.setflags(write=False)
    return DynkinGraph(fam, r, tuple(labels), adj, _two_colour(adj), h, labels[0])


def _two_colour(adj: np.ndarray) -> tuple[int, ...]:
    n = len(adj)
    colour = [-1] * n
    colour[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(adj[v]):
            if colour[w] < 0:
                colour[w] = 1 - colour[v]
                stack.append(int(w))
    return tuple(colour)


@dataclass(frozen=True)
class PFData:
    beta: float
    weights: dict[str, float]
    total_mass: float

    def vector(self, g: DynkinGraph) -> np.ndarray:
        return np.array([self.weights[v] for v in g.vertices])


def perron_data(g: DynkinGraph) -> PFData:
    """Perron-Frobenius eigenvalue and weights normalised to 1 at the end vertex.

    beta is taken in closed form; the weights come from the null space of
    adjacency - beta, which is one dimensional for a connected graph.
    """
    beta = 2.0 * math.cos(math.pi / g.coxeter_number)
    m = g.adjacency.astype(float) - beta * np.eye(g.size)
    _, s, vt = np.linalg.svd(m)
    mu = vt[-1]
    mu = mu / mu[g.index(g.distinguished_vertex)]
    weights = {v: float(x) for v, x in zip(g.vertices, mu)}
    return PFData(beta, weights, float(np.sum(mu * mu)))


def chebyshev_sequence(adj: np.ndarray, length: int) -> list[np.ndarray]:
    """U_0(adj), ..., U_{length-1}(adj) with U_{n+1} = U_n adj - U_{n-1}."""
    n = len(adj)
    out = [np.eye(n, dtype=np.int64)]
    if length > 1:
        out.append(np.array(adj, dtype=np.int64))
    while len(out) < length:
        out.append(out[-1] @ adj - out[-2])
    return out[:length]


def coxeter_number(g: DynkinGraph) -> int:
    """Least n with U_{n-1}(adjacency) = 0, found by running the recursion."""
    prev = np.eye(g.size, dtype=np.int64)
    cur = np.array(g.adjacency, dtype=np.int64)
    n = 2
    while cur.any():
        prev, cur = cur, cur @ g.adjacency - prev
        n += 1
        if n > 4 * g.size + 8:
            raise ArithmeticError(f"{g.name}: Chebyshev sequence does not vanish")
    return n
