import numpy as np
import pytest

from ghjfusion.core import build_diagram
from ghjfusion.modular import exponent_multiplicities, modular_invariant, s_matrix


def test_s_matrix_is_orthogonal_and_symmetric():
    for h in (5, 12, 30):
        s = s_matrix(h)
        assert np.allclose(s, s.T) and np.allclose(s @ s, np.eye(h - 1))


@pytest.mark.parametrize("n", range(1, 12))
def test_type_a_is_identity(n):
    assert np.array_equal(modular_invariant(build_diagram(f"A{n}")), np.eye(n))


def test_e6_blocks():
    z = modular_invariant(build_diagram("E6"))
    blocks = [(0, 6), (3, 7), (4, 10)]
    want = np.zeros((11, 11), dtype=int)
    for a, b in blocks:
        want[np.ix_([a, b], [a, b])] = 1
    assert np.array_equal(z, want)


def test_exponents_e6():
    assert [l for l, m in enumerate(exponent_multiplicities(build_diagram("E6"))) if m] == [0, 3, 4, 6, 7, 10]


@pytest.mark.parametrize(
    "spec,count",
    [("E6", 12), ("E7", 17), ("E8", 32), ("D4", 8), ("D6", 12), ("D8", 16), ("D5", 7), ("D7", 11)],
)
def test_number_of_irreducibles(spec, count):
    z = modular_invariant(build_diagram(spec))
    assert int((z * z).sum()) == count
    s = s_matrix(build_diagram(spec).coxeter_number)
    assert np.allclose(z @ s, s @ z)
