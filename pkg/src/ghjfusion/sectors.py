"""Sector fusion between the A side and the K side, and principal graphs.

A-A sectors are the vertices [n] of A_{h-1}, A-K and K-A sectors are the
vertices of K.  Every multiplicity here is an essential path dimension.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import DynkinGraph, build_diagram
from .esspath import esspath_table


@dataclass(frozen=True)
class SectorLabel:
    kind: str  # "AA", "AK", "KA" or "KK"
    payload: str

    def __str__(self) -> str:
        return self.payload


@dataclass
class Decomposition:
    terms: dict[SectorLabel, int]
    note: str = ""

    def as_dict(self) -> dict[str, int]:
        return {str(k): v for k, v in self.terms.items()}


@dataclass(frozen=True, eq=False)
class FusionRing:
    """A based ring: basis, identity, involution, structure constants, qdims.

    N[i, j, k] is the multiplicity of basis element k in i * j.
    """

    basis: tuple[str, ...]
    identity_index: int
    conjugation: tuple[int, ...]
    N: np.ndarray
    qdims: tuple[float, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def product(self, i: int, j: int) -> dict[int, int]:
        return {int(k): int(self.N[i, j, k]) for k in np.flatnonzero(self.N[i, j])}

    def format_product(self, i: int, j: int) -> str:
        """Product in the compact form "(1)^2 (3)^3 (5)"."""
        parts = []
        for k, m in self.product(i, j).items():
            parts.append(f"({self.basis[k]})" + (f"^{m}" if m > 1 else ""))
        return " ".join(parts) if parts else "0"

    def check(self, tol: float = 1e-9) -> list[str]:
        """Ring axioms that fail, as readable messages; empty if all hold."""
        n = self.N
        r = self.rank
        e = self.identity_index
        bad = []
        eye = np.eye(r, dtype=n.dtype)
        if (n < 0).any():
            bad.append("negative structure constant")
        if not np.array_equal(n[e], eye) or not np.array_equal(n[:, e, :], eye):
            bad.append("identity law")
        conj = np.array(self.conjugation)
        if sorted(conj.tolist()) != list(range(r)) or not np.array_equal(conj[conj], np.arange(r)):
            bad.append("conjugation is not an involution")
        pairing = np.zeros((r, r), dtype=n.dtype)
        pairing[np.arange(r), conj] = 1
        if not np.array_equal(n[:, :, e], pairing):
            bad.append("conjugate pairing")
        # (ij)k against i(jk)
        left = np.einsum("ijm,mkl->ijkl", n, n)
        right = np.einsum("jkm,iml->ijkl", n, n)
        if not np.array_equal(left, right):
            bad.append("associativity")
        d = np.array(self.qdims)
        if np.abs(np.outer(d, d) - n @ d).max() > tol:
            bad.append("qdim multiplicativity")
        return bad

    def is_commutative(self) -> tuple[bool, tuple[int, int] | None]:
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if not np.array_equal(self.N[i, j], self.N[j, i]):
                    return False, (i, j)
        return True, None

    def subring(self, indices) -> FusionRing:
        idx = list(indices)
        pos = {v: k for k, v in enumerate(idx)}
        sub = self.N[np.ix_(idx, idx, idx)]
        return FusionRing(
            tuple(self.basis[i] for i in idx),
            pos[self.identity_index],
            tuple(pos[self.conjugation[i]] for i in idx),
            sub,
            tuple(self.qdims[i] for i in idx),
        )

    def closure(self, indices) -> list[int]:
        """Smallest set containing indices and the identity, closed under products."""
        have = set(indices) | {self.identity_index}
        frontier = list(have)
        while frontier:
            new = set()
            for i, j in product(list(have), frontier):
                for k in np.flatnonzero(self.N[i, j]):
                    if k not in have:
                        new.add(int(k))
                for k in np.flatnonzero(self.N[j, i]):
                    if k not in have:
                        new.add(int(k))
            have |= new
            frontier = list(new)
        return sorted(have)

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "identity": self.identity_index,
            "conjugation": list(self.conjugation),
            "qdims": [round(d, 12) for d in self.qdims],
            "products": [
                [{"target": k, "mult": m} for k, m in self.product(i, j).items()]
                for i in range(self.rank)
                for j in range(self.rank)
            ],
        }


def _a_qdims(l: int) -> tuple[float, ...]:
    h = l + 1
    return tuple(float(np.sin((k + 1) * np.pi / h) / np.sin(np.pi / h)) for k in range(l))


def aa_fusion_ring(l: int) -> FusionRing:
    """Fusion of the vertices [0] .. [l-1] of A_l: N[n][k][m] = E(n)(A_l)[k, m]."""
    g = build_diagram(f"A{l}")
    table = esspath_table(g)
    n = np.stack([np.array(m) for m in table.matrices])
    return FusionRing(tuple(str(k) for k in range(l)), 0, tuple(range(l)), n, _a_qdims(l))


def _label(kind: str, payload: str) -> SectorLabel:
    return SectorLabel(kind, payload)


def aa_times_ak(K: DynkinGraph, n: int, x) -> Decomposition:
    """[n] times the A-K sector x, as a sum of A-K sectors."""
    table = esspath_table(K)
    xi = K.index(x)
    if not 0 <= n < len(table):
        return Decomposition({}, f"[{n}] is not a vertex of A{len(table)}")
    row = table[n][xi]
    terms = {_label("AK", K.vertices[y]): int(row[y]) for y in np.flatnonzero(row)}
    note = "" if terms else "parity mismatch: empty product"
    return Decomposition(terms, note)


def ak_times_ka(K: DynkinGraph, y, x) -> Decomposition:
    """A-K sector y times the K-A sector x-bar, as a sum of A-A sectors."""
    table = esspath_table(K)
    xi, yi = K.index(x), K.index(y)
    terms = {
        _label("AA", f"[{n}]"): int(m[xi, yi]) for n, m in enumerate(table.matrices) if m[xi, yi]
    }
    return Decomposition(terms)


@dataclass
class PrincipalGraphData:
    """Bipartite multigraph with depths, rooted at the distinguished even vertex."""

    even_vertices: list[tuple[str, int]]
    odd_vertices: list[tuple[str, int]]
    adjacency: np.ndarray  # even x odd multiplicities
    distinguished: str
    diagnostics: dict = field(default_factory=dict)

    @property
    def even_count(self) -> int:
        return len(self.even_vertices)

    @property
    def odd_count(self) -> int:
        return len(self.odd_vertices)

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for i, j in zip(*np.nonzero(self.adjacency)):
            out.append((self.even_vertices[i][0], self.odd_vertices[j][0], int(self.adjacency[i, j])))
        return out

    def to_json(self) -> dict:
        return {
            "evens": [v for v, _ in self.even_vertices],
            "odds": [v for v, _ in self.odd_vertices],
            "edges": [list(e) for e in self.edges()],
            "depths": {v: d for v, d in self.even_vertices + self.odd_vertices},
            "distinguished": self.distinguished,
            "diagnostics": self.diagnostics,
        }


def bipartite_component(
    even_labels: list[str],
    odd_labels: list[str],
    adj: np.ndarray,
    root: int,
    even_keys: list | None = None,
    odd_keys: list | None = None,
) -> PrincipalGraphData:
    """Connected component of ``root`` (an even vertex) with BFS depths.

    Vertices are listed by depth, ties broken by the given sort keys.
    """
    ne, no = adj.shape
    depth_e = {root: 0}
    depth_o: dict[int, int] = {}
    queue = deque([("e", root)])
    while queue:
        side, v = queue.popleft()
        if side == "e":
            for w in np.flatnonzero(adj[v]):
                if w not in depth_o:
                    depth_o[int(w)] = depth_e[v] + 1
                    queue.append(("o", int(w)))
        else:
            for w in np.flatnonzero(adj[:, v]):
                if w not in depth_e:
                    depth_e[int(w)] = depth_o[v] + 1
                    queue.append(("e", int(w)))
    ek = even_keys or list(range(ne))
    ok = odd_keys or list(range(no))
    evens = sorted(depth_e, key=lambda i: (depth_e[i], ek[i]))
    odds = sorted(depth_o, key=lambda j: (depth_o[j], ok[j]))
    sub = adj[np.ix_(evens, odds)] if evens and odds else np.zeros((len(evens), len(odds)), dtype=np.int64)
    left_e = [even_labels[i] for i in range(ne) if i not in depth_e and adj[i].any()]
    left_o = [odd_labels[j] for j in range(no) if j not in depth_o and adj[:, j].any()]
    diagnostics = {}
    if left_e or left_o:
        diagnostics["pruned"] = {"evens": left_e, "odds": left_o}
    return PrincipalGraphData(
        [(even_labels[i], depth_e[i]) for i in evens],
        [(odd_labels[j], depth_o[j]) for j in odds],
        np.array(sub, dtype=np.int64),
        even_labels[root],
        diagnostics,
    )


def principal_graph(K: DynkinGraph, x) -> PrincipalGraphData:
    """Component of [0] in the bipartite graph P[n, y] = E(n)[x, y], n even."""
    table = esspath_table(K)
    xi = K.index(x)
    evens = list(range(0, len(table), 2))
    adj = np.array([[table[n][xi, y] for y in range(K.size)] for n in evens], dtype=np.int64)
    return bipartite_component([f"[{n}]" for n in evens], list(K.vertices), adj, 0)
