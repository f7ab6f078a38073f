import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghjfusion.core import build_diagram, coxeter_number, perron_data
from ghjfusion.errors import RankOutOfRange, UnknownFamily, UnknownVertex

SPECS = [f"A{i}" for i in range(1, 13)] + [f"D{i}" for i in range(4, 13)] + ["E6", "E7", "E8"]

diagram_specs = st.one_of(
    st.integers(1, 30).map(lambda n: f"A{n}"),
    st.integers(4, 16).map(lambda n: f"D{n}"),
    st.sampled_from(["E6", "E7", "E8"]),
)


def test_a4_chain():
    g = build_diagram("A4")
    assert g.vertices == ("a0", "a1", "a2", "a3")
    assert g.coxeter_number == 5
    assert [tuple(np.flatnonzero(r)) for r in g.adjacency] == [(1,), (0, 2), (1, 3), (2,)]


def test_e6_triple_point_and_degrees():
    g = build_diagram("E6")
    assert g.degrees()[g.index("e2")] == 3
    # same multiset as (1,2,3,2,1,1); in label order it reads (1,2,3,1,1,2)
    assert sorted(g.degrees()) == sorted((1, 2, 3, 2, 1, 1))
    assert g.degrees() == (1, 2, 3, 1, 1, 2)


def test_e7_e8_triple_points():
    assert build_diagram("E7").degrees()[3] == 3
    assert build_diagram("E8").degrees()[4] == 3


def test_d6_fork():
    g = build_diagram("D6")
    assert g.vertices[-2:] == ("d4", "d4'")
    assert g.degrees()[g.index("d3")] == 3
    assert set(np.flatnonzero(g.adjacency[g.index("d3")])) == {2, 4, 5}


def test_d_odd_fork():
    g = build_diagram("D7")
    assert set(np.flatnonzero(g.adjacency[g.index("d4")])) == {g.index("d3"), g.index("d5"), g.index("d5'")}


@pytest.mark.parametrize("spec,err", [("X9", UnknownFamily), ("", UnknownFamily), ("D3", RankOutOfRange),
                                      ("E9", RankOutOfRange), ("A0", RankOutOfRange), ("E5", RankOutOfRange)])
def test_bad_specs(spec, err):
    with pytest.raises(err):
        build_diagram(spec)


def test_case_insensitive_and_vertex_lookup():
    g = build_diagram("e8")
    assert g.name == "E8"
    assert g.index("e7") == g.index("7") == g.index(7) == 7
    with pytest.raises(UnknownVertex):
        g.index("e9")


@pytest.mark.parametrize("spec", SPECS)
def test_diagram_invariants(spec):
    g = build_diagram(spec)
    a = g.adjacency
    assert np.array_equal(a, a.T) and not np.diag(a).any() and set(np.unique(a)) <= {0, 1}
    for i, j in zip(*np.nonzero(a)):
        assert g.bipartition[i] != g.bipartition[j]
    assert g.distinguished_vertex == g.vertices[0]
    assert coxeter_number(g) == g.coxeter_number


def test_coxeter_examples():
    assert coxeter_number(build_diagram("A4")) == 5
    assert coxeter_number(build_diagram("D5")) == 8
    assert coxeter_number(build_diagram("E8")) == 30


def test_perron_examples():
    assert perron_data(build_diagram("A3")).beta == pytest.approx(math.sqrt(2), abs=1e-12)
    assert perron_data(build_diagram("A11")).total_mass == pytest.approx(48 + 24 * math.sqrt(3), abs=1e-9)
    assert perron_data(build_diagram("E6")).beta == pytest.approx(2 * math.cos(math.pi / 12), abs=1e-12)


@given(diagram_specs)
def test_perron_properties(spec):
    g = build_diagram(spec)
    pf = perron_data(g)
    mu = pf.vector(g)
    assert np.abs(g.adjacency @ mu - pf.beta * mu).max() < 1e-12
    assert mu.min() >= 1 - 1e-12
    assert pf.weights[g.distinguished_vertex] == 1.0
    assert pf.total_mass == pytest.approx(float(mu @ mu))


@pytest.mark.parametrize("m", range(5, 13))
def test_total_mass_a_vs_d(m):
    d = build_diagram(f"D{m}")
    a = build_diagram(f"A{d.coxeter_number - 1}")
    assert perron_data(a).total_mass == pytest.approx(2 * perron_data(d).total_mass, rel=1e-12)
