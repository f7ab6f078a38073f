"""Isomorphism tests for pointed bipartite multigraphs and based rings."""

from __future__ import annotations

from collections import Counter

import networkx as nx
import numpy as np

from .sectors import FusionRing, PrincipalGraphData


def _as_nx(g: PrincipalGraphData) -> nx.Graph:
    G = nx.Graph()
    for v, d in g.even_vertices:
        G.add_node(("e", v), side=0, root=(v == g.distinguished))
    for v, d in g.odd_vertices:
        G.add_node(("o", v), side=1, root=False)
    for a, b, m in g.edges():
        G.add_edge(("e", a), ("o", b), mult=m)
    return G


def graphs_isomorphic(g1: PrincipalGraphData, g2: PrincipalGraphData) -> bool:
    """Isomorphism of bipartite multigraphs keeping sides, multiplicities and the root."""
    if (g1.even_count, g1.odd_count) != (g2.even_count, g2.odd_count):
        return False
    return nx.is_isomorphic(
        _as_nx(g1),
        _as_nx(g2),
        node_match=lambda a, b: a["side"] == b["side"] and a["root"] == b["root"],
        edge_match=lambda a, b: a["mult"] == b["mult"],
    )


def _signature(ring: FusionRing, i: int) -> tuple:
    n = ring.N
    return (
        round(ring.qdims[i], 6),
        ring.conjugation[i] == i,
        int(n[i, i].sum()),
        tuple(sorted(Counter(n[i].ravel().tolist()).items())),
    )


def ring_isomorphism(r1: FusionRing, r2: FusionRing) -> list[int] | None:
    """A basis bijection f with N1[i,j,k] = N2[f i, f j, f k], or None."""
    if r1.rank != r2.rank:
        return None
    s1 = [_signature(r1, i) for i in range(r1.rank)]
    s2 = [_signature(r2, i) for i in range(r2.rank)]
    if sorted(s1) != sorted(s2):
        return None
    order = [r1.identity_index] + sorted(
        (i for i in range(r1.rank) if i != r1.identity_index), key=lambda i: (-s1[i][0], i)
    )
    cands = {i: [j for j in range(r2.rank) if s2[j] == s1[i]] for i in range(r1.rank)}
    cands[r1.identity_index] = [r2.identity_index]
    f: dict[int, int] = {}
    used: set[int] = set()
    N1, N2 = r1.N, r2.N

    def consistent(i: int, j: int) -> bool:
        if r1.conjugation[i] in f and f[r1.conjugation[i]] != r2.conjugation[j]:
            return False
        a = list(f) + [i]
        b = [f[k] for k in f] + [j]
        return np.array_equal(N1[np.ix_(a, a, a)], N2[np.ix_(b, b, b)])

    def rec(t: int) -> bool:
        if t == len(order):
            return True
        i = order[t]
        for j in cands[i]:
            if j in used or not consistent(i, j):
                continue
            f[i] = j
            used.add(j)
            if rec(t + 1):
                return True
            del f[i]
            used.discard(j)
        return False

    if not rec(0):
        return None
    return [f[i] for i in range(r1.rank)]


def rings_isomorphic(r1: FusionRing, r2: FusionRing) -> bool:
    return ring_isomorphism(r1, r2) is not None
