import numpy as np
from hypothesis import given, settings, strategies as st

from ghjfusion.core import build_diagram
from ghjfusion.iso import graphs_isomorphic, ring_isomorphism, rings_isomorphic
from ghjfusion.sectors import FusionRing, PrincipalGraphData, aa_fusion_ring, principal_graph
from ghjfusion.zsystem import decompose_zsystem, zfusion_table


def _permute(ring: FusionRing, perm) -> FusionRing:
    # new basis element perm[i] is old element i
    inv = np.argsort(perm)
    N = ring.N[np.ix_(inv, inv, inv)]
    conj = tuple(int(perm[ring.conjugation[inv[k]]]) for k in range(ring.rank))
    qd = tuple(ring.qdims[inv[k]] for k in range(ring.rank))
    return FusionRing(ring.basis, int(perm[ring.identity_index]), conj, N, qd)


@settings(deadline=None, max_examples=20)
@given(st.sampled_from(["E6", "E7", "D6", "D8"]), st.randoms(use_true_random=False))
def test_ring_isomorphism_under_relabelling(spec, rnd):
    ring = zfusion_table(decompose_zsystem(build_diagram(spec)))
    perm = list(range(ring.rank))
    rnd.shuffle(perm)
    other = _permute(ring, perm)
    assert other.check() == []
    f = ring_isomorphism(ring, other)
    assert f is not None
    assert np.array_equal(ring.N, other.N[np.ix_(f, f, f)])


def test_non_isomorphic_rings():
    assert not rings_isomorphic(aa_fusion_ring(4), aa_fusion_ring(5))
    d6 = zfusion_table(decompose_zsystem(build_diagram("D6")))
    e6 = zfusion_table(decompose_zsystem(build_diagram("E6")))
    assert not rings_isomorphic(d6, e6)


def test_graph_isomorphism_respects_multiplicity():
    g = PrincipalGraphData([("a", 0), ("b", 2)], [("x", 1)], np.array([[1], [2]]), "a")
    h = PrincipalGraphData([("a", 0), ("b", 2)], [("x", 1)], np.array([[1], [1]]), "a")
    assert graphs_isomorphic(g, g)
    assert not graphs_isomorphic(g, h)


def test_graph_isomorphism_respects_root():
    g = PrincipalGraphData([("a", 0), ("b", 2)], [("x", 1)], np.array([[1], [2]]), "a")
    h = PrincipalGraphData([("a", 0), ("b", 2)], [("x", 1)], np.array([[2], [1]]), "a")
    assert not graphs_isomorphic(g, h)


def test_principal_graphs_of_different_diagrams():
    assert not graphs_isomorphic(principal_graph(build_diagram("E6"), "e0"), principal_graph(build_diagram("E7"), "e0"))
