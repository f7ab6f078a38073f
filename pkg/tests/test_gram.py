import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ghjfusion.errors import DecompositionFailed
from ghjfusion.gram import GramFactorizer, square_partitions


def test_square_partitions():
    assert sorted(square_partitions(5)) == [(1, 1, 1, 1, 1), (2, 1)]
    assert list(square_partitions(0)) == [()]
    for s in range(30):
        for p in square_partitions(s):
            assert sum(b * b for b in p) == s and list(p) == sorted(p, reverse=True)


def test_identity_gram():
    sols = GramFactorizer(np.eye(3, dtype=int), range(3)).run()
    assert len(sols) == 1 and np.array_equal(sols[0] @ sols[0].T, np.eye(3))


def test_seeded_column_is_kept():
    M = np.array([[1, 0], [1, 1], [0, 2]])
    G = M @ M.T
    sol = GramFactorizer(G, range(3), seeds=[M[:, 0]]).first()
    assert np.array_equal(sol[:, 0], M[:, 0])
    assert np.array_equal(sol @ sol.T, G)


def test_impossible_gram():
    # rows of norm 1 with inner product 2 cannot exist
    G = np.array([[1, 2], [2, 1]])
    with pytest.raises(DecompositionFailed):
        GramFactorizer(G, range(2)).first()


def test_node_cap():
    M = np.eye(6, dtype=int) + np.eye(6, k=1, dtype=int)
    with pytest.raises(DecompositionFailed):
        GramFactorizer(M @ M.T, range(6), max_nodes=2).first()


def test_leaf_check_rejects_and_search_continues():
    G = np.array([[2]])
    seen = []

    def leaf(m):
        seen.append(m.shape[1])
        return m.shape[1] == 2

    sol = GramFactorizer(G, [0], leaf_check=leaf).first()
    assert sol.shape[1] == 2 and sol[0].tolist() == [1, 1]


@settings(deadline=None, max_examples=40)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=2, max_size=5))
def test_random_grams_factor(rows):
    M = np.array(rows)
    M = M[:, M.any(axis=0)]
    G = M @ M.T
    if not np.diag(G).all():
        return
    sol = GramFactorizer(G, range(len(G)), max_nodes=10**5).first()
    assert (sol >= 0).all()
    assert np.array_equal(sol @ sol.T, G)


def test_max_rank_completion():
    M = np.array([[1, 0], [0, 1], [1, 1], [2, 1]])
    G = M @ M.T
    f = GramFactorizer(G, range(4), max_rank=2)
    sol = f.first()
    assert sol.shape[1] == 2 and np.array_equal(sol @ sol.T, G)
