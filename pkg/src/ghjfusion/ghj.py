"""Invariants of the GHJ subfactor GHJ(K, x).

The N-N side lives in the A_{h-1} fusion ring, the M-M side in the even
part of the K-K connection system.  Both principal graphs are components of
bipartite fusion graphs rooted at the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DynkinGraph, build_diagram, perron_data
from .esspath import esspath_table
from .errors import ClosureEscapesBasis, DecompositionFailed, PremiseUnavailable
from .iso import graphs_isomorphic, rings_isomorphic
from .sectors import FusionRing, PrincipalGraphData, aa_fusion_ring, bipartite_component, principal_graph
from .zsystem import ConnectionSystem, decompose_zsystem, zfusion_table


def standard_vertex(K: DynkinGraph) -> str:
    """Marked vertex used for reports when none is given.

    The end vertex for E (index 3+sqrt3, ~7.759, ~19.48), and the vertex
    next to it for A and D, where the end vertex gives index 1 or 2.
    """
    if K.family == "E":
        return "e0"
    return K.vertices[1] if K.size > 1 else K.vertices[0]


def ghj_index(K: DynkinGraph, x) -> float:
    """|A_{h-1}| / |K| * mu(x)^2 with total masses of PF weights."""
    pf = perron_data(K)
    mu_x = pf.weights[K.vertices[K.index(x)]]
    a = perron_data(build_diagram(f"A{K.coxeter_number - 1}"))
    return a.total_mass / pf.total_mass * mu_x**2


def dual_principal_graph(K: DynkinGraph, x, sys: ConnectionSystem | None = None) -> PrincipalGraphData:
    """Component of the identity in D[w, y] = n(w)[x, y], w even."""
    sys = sys or decompose_zsystem(K)
    xi = K.index(x)
    evens = sys.even_indices()
    adj = np.array([[sys.irreducibles[w].n[xi, y] for y in range(K.size)] for w in evens], dtype=np.int64)
    labels = [sys.irreducibles[w].id for w in evens]
    return bipartite_component(labels, list(K.vertices), adj, evens.index(0), even_keys=evens)


def intermediate_decomposition(K: DynkinGraph, x, sys: ConnectionSystem | None = None) -> dict | None:
    """An irreducible w with x0 * w = x and qdim(w) > 1, if one exists.

    Then N < P < M with P the GHJ subfactor at the end vertex x0.  An
    irreducible of dimension 1 only relabels the vertex and gives nothing.
    """
    sys = sys or decompose_zsystem(K)
    x0 = K.index(K.distinguished_vertex)
    xi = K.index(x)
    target = np.zeros(K.size, dtype=np.int64)
    target[xi] = 1
    for w in sys.irreducibles:
        if w.qdim > 1 + 1e-9 and np.array_equal(w.n[x0], target):
            return {"baseVertex": K.vertices[x0], "irreducible": w.id, "alias": w.alias, "qdim": w.qdim}
    return None


def _even_ids(g: PrincipalGraphData) -> list[str]:
    return [v for v, _ in g.even_vertices]


def nn_ring(K: DynkinGraph, principal: PrincipalGraphData) -> FusionRing:
    ring = aa_fusion_ring(K.coxeter_number - 1)
    idx = sorted(int(v.strip("[]")) for v in _even_ids(principal))
    if ring.closure(idx) != idx:
        raise ClosureEscapesBasis(f"{K.name}: N-N vertices are not closed under fusion")
    return ring.subring(idx)


def mm_ring(sys: ConnectionSystem, dual: PrincipalGraphData, ring: FusionRing | None = None) -> FusionRing:
    ring = ring or zfusion_table(sys)
    ids = [w.id for w in sys.irreducibles]
    start = [ids.index(v) for v in _even_ids(dual)]
    closed = ring.closure(start)
    even = set(sys.even_indices())
    if not set(closed) <= even:
        raise ClosureEscapesBasis(f"{sys.diagram.name}: closure of the dual even vertices leaves the even part")
    return ring.subring(closed)


def even_fusion_rings(K: DynkinGraph, x, sys: ConnectionSystem | None = None) -> dict[str, FusionRing]:
    sys = sys or decompose_zsystem(K)
    p = principal_graph(K, x)
    d = dual_principal_graph(K, x, sys)
    return {"nnRing": nn_ring(K, p), "mmRing": mm_ring(sys, d)}


@dataclass
class GHJReport:
    diagram: DynkinGraph
    vertex: str
    index: float
    principal: PrincipalGraphData
    dual: PrincipalGraphData
    nn_ring: FusionRing
    mm_ring: FusionRing
    even_counts: tuple[int, int]
    graphs_isomorphic: bool
    rings_isomorphic: bool
    intermediate: dict | None

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.name,
            "vertex": self.vertex,
            "index": self.index,
            "principal": self.principal.to_json(),
            "dual": self.dual.to_json(),
            "nnRing": {"rank": self.nn_ring.rank, "commutative": self.nn_ring.is_commutative()[0]},
            "mmRing": {"rank": self.mm_ring.rank, "commutative": self.mm_ring.is_commutative()[0]},
            "evenCounts": list(self.even_counts),
            "graphsIsomorphic": self.graphs_isomorphic,
            "ringsIsomorphic": self.rings_isomorphic,
            "intermediate": self.intermediate,
        }


def ghj_report(K: DynkinGraph, x=None) -> GHJReport:
    x = K.vertices[K.index(x)] if x is not None else standard_vertex(K)
    sys = decompose_zsystem(K)
    p = principal_graph(K, x)
    d = dual_principal_graph(K, x, sys)
    nn = nn_ring(K, p)
    mm = mm_ring(sys, d)
    return GHJReport(
        K,
        x,
        ghj_index(K, x),
        p,
        d,
        nn,
        mm,
        (p.even_count, d.even_count),
        graphs_isomorphic(p, d),
        rings_isomorphic(nn, mm),
        intermediate_decomposition(K, x, sys),
    )


def _rank_and_comm(ring: FusionRing) -> dict:
    ok, pair = ring.is_commutative()
    out = {"rank": ring.rank, "commutative": ok}
    if pair:
        out["witness"] = [ring.basis[pair[0]], ring.basis[pair[1]]]
    return out


def subequivalence_report(K: DynkinGraph) -> dict:
    """Ring-level evidence that A_l strictly dominates K (D_even, E6, E8).

    This compares Grothendieck rings only; it is not a statement about
    paragroups or connections.
    """
    if not ((K.family == "D" and K.rank % 2 == 0) or K.name in ("E6", "E8")):
        raise ValueError(f"{K.name}: subequivalence is reported for D_even, E6 and E8 only")
    try:
        sys = decompose_zsystem(K)
        ring = zfusion_table(sys)
    except DecompositionFailed as exc:
        raise PremiseUnavailable(str(exc)) from exc
    l = K.coxeter_number - 1
    a_even = aa_fusion_ring(l).subring(range(0, l, 2))
    if K.name == "D4":
        # the direct sum of the three index-2 connections at d0, d2, d2'
        marks = ["d0", "d2", "d2'"]
    else:
        marks = [standard_vertex(K)]
    mi = [K.index(m) for m in marks]

    table = esspath_table(K)
    nn_idx = sorted({n for n, m in enumerate(table.matrices) for a in mi for b in mi if m[a, b]})
    mm_idx = sorted({i for i, w in enumerate(sys.irreducibles) for a in mi for b in mi if w.n[a, b]})
    nn = aa_fusion_ring(l).subring(aa_fusion_ring(l).closure(nn_idx))
    mm = ring.subring(ring.closure(mm_idx))
    evidence = {
        "nnIsAEven": rings_isomorphic(nn, a_even),
        "nn": _rank_and_comm(nn),
        "mm": _rank_and_comm(mm),
        "ringsIsomorphic": rings_isomorphic(nn, mm),
        "basisSizeDiffers": nn.rank != mm.rank,
        "commutativityDiffers": nn.is_commutative()[0] != mm.is_commutative()[0],
    }
    strict = evidence["nnIsAEven"] and not evidence["ringsIsomorphic"]
    return {
        "relation": f"A{l} > {K.name}" if strict else None,
        "strict": strict,
        "markedVertices": marks,
        "evidence": evidence,
        "scope": "Grothendieck-ring evidence only",
    }
