import numpy as np
import pytest

from ghjfusion.core import build_diagram
from ghjfusion.errors import DependentRepresentation
from ghjfusion.esspath import esspath_table
from ghjfusion.sectors import aa_fusion_ring
from ghjfusion.zsystem import (
    ConnectionSystem,
    decompose_zsystem,
    even_part,
    is_commutative,
    product_gram,
    representation_defect,
    validate_system,
    zfusion_table,
)

ALL = [f"A{i}" for i in range(1, 12)] + [f"D{i}" for i in range(4, 13)] + ["E6", "E7", "E8"]


def _pair(K, x, y):
    return K.index(x) * K.size + K.index(y)


def test_product_gram_examples():
    a = build_diagram("A5")
    assert product_gram(a).G[0, 0] == 1
    e6 = build_diagram("E6")
    G = product_gram(e6).G
    assert G[_pair(e6, "e0", "e0"), _pair(e6, "e0", "e0")] == 2
    assert G[_pair(e6, "e0", "e0"), _pair(e6, "e0", "e2")] == 1
    assert np.array_equal(G, G.T) and (np.diag(G) >= 1).all()


@pytest.mark.parametrize("spec", ALL)
def test_system_invariants(spec):
    sys = decompose_zsystem(build_diagram(spec))
    assert validate_system(sys) == []
    ring = zfusion_table(sys)
    assert ring.check() == []
    assert representation_defect(sys, ring.N) == []


@pytest.mark.parametrize("spec,count", [("E6", 12), ("E7", 17), ("E8", 32), ("D4", 8), ("D6", 12), ("D5", 7)])
def test_counts(spec, count):
    assert len(decompose_zsystem(build_diagram(spec))) == count


@pytest.mark.parametrize("m", range(1, 12))
def test_type_a_irreducibles_are_tables(m):
    K = build_diagram(f"A{m}")
    sys = decompose_zsystem(K)
    tables = esspath_table(K).matrices
    assert sorted(w.n.tobytes() for w in sys.irreducibles) == sorted(t.tobytes() for t in tables)


@pytest.mark.parametrize("m", [3, 5, 8, 11])
def test_pair_search_agrees_for_type_a(m):
    K = build_diagram(f"A{m}")
    a = decompose_zsystem(K)
    b = decompose_zsystem(K, method="pair")
    assert [w.n.tolist() for w in a.irreducibles] == [w.n.tolist() for w in b.irreducibles]
    # independent matrices: the ring is solved from the matrices alone
    assert np.array_equal(zfusion_table(b).N, zfusion_table(a).N)


def test_pair_search_on_e6_leaves_ring_undetermined():
    sys = decompose_zsystem(build_diagram("E6"), method="pair")
    assert validate_system(sys) == []
    with pytest.raises(DependentRepresentation):
        zfusion_table(sys)


@pytest.mark.parametrize("n", range(2, 7))
def test_d_even_eps(n):
    K = build_diagram(f"D{2 * n}")
    sys = decompose_zsystem(K)
    ring = zfusion_table(sys)
    m = K.size
    P = np.eye(m, dtype=int)
    P[[m - 2, m - 1]] = P[[m - 1, m - 2]]
    eps = sys.index("eps")
    assert np.array_equal(sys.irreducibles[eps].n, P)
    assert ring.product(eps, eps) == {0: 1}
    # eps never shows up in x-bar * y through essential paths
    for t in esspath_table(K).matrices:
        assert not np.array_equal(t, P)
    # left cosets of {id, eps} split the basis in two equal halves
    plain = [i for i in range(ring.rank) if sys.irreducibles[i].alias.endswith("]")]
    with_eps = [i for i in range(ring.rank) if i not in plain]
    assert len(plain) == len(with_eps) == m
    assert {next(iter(ring.product(i, eps))) for i in plain} == set(with_eps)


def test_identity_products():
    for spec in ["E7", "D6"]:
        ring = zfusion_table(decompose_zsystem(build_diagram(spec)))
        for w in range(ring.rank):
            assert ring.product(0, w) == {w: 1} == ring.product(w, 0)


def test_e7_pattern():
    ring = zfusion_table(decompose_zsystem(build_diagram("E7")))
    hits = [
        (i, j)
        for i in range(1, ring.rank)
        for j in range(1, ring.rank)
        if i != j and sorted(ring.product(i, j).values()) == [1, 2, 3]
    ]
    assert hits


@pytest.mark.parametrize("spec,comm", [("A5", True), ("E8", True), ("E6", True), ("D6", False), ("D7", True)])
def test_commutativity(spec, comm):
    ok, witness = is_commutative(even_part(decompose_zsystem(build_diagram(spec))))
    assert ok is comm
    assert (witness is None) is comm


def test_json_round_trip():
    sys = decompose_zsystem(build_diagram("E7"))
    back = ConnectionSystem.from_json(sys.to_json())
    assert back.to_json() == sys.to_json()
    assert np.array_equal(zfusion_table(back).N, zfusion_table(sys).N)


def test_validate_detects_corruption():
    sys = decompose_zsystem(build_diagram("E6"))
    data = sys.to_json()
    data["irreducibles"][3]["n"][0][0] += 1
    assert validate_system(ConnectionSystem.from_json(data))


def test_canonical_order():
    sys = decompose_zsystem(build_diagram("E8"))
    assert sys.irreducibles[0].id == "w0" and np.array_equal(sys.irreducibles[0].n, np.eye(8))
    keys = [(w.parity != "even", round(w.qdim, 9)) for w in sys.irreducibles[1:]]
    assert keys == sorted(keys)


def test_a_ring_from_pipeline_matches_aa_ring():
    K = build_diagram("A7")
    sys = decompose_zsystem(K)
    t = esspath_table(K)
    perm = [next(k for k in range(7) if np.array_equal(w.n, t[k])) for w in sys.irreducibles]
    assert np.array_equal(zfusion_table(sys).N, aa_fusion_ring(7).N[np.ix_(perm, perm, perm)])
