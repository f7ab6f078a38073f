"""Validator suite behind ``ghjfusion check``.

Each check returns (name, ok, detail).  The full suite walks every diagram
in the supported ranges; the quick one keeps to a handful of small cases.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator

import numpy as np

from .core import build_diagram, chebyshev_sequence, coxeter_number, perron_data
from .errors import GHJError
from .esspath import esspath_oracle, esspath_table
from .ghj import dual_principal_graph, ghj_index, ghj_report, intermediate_decomposition
from .sectors import aa_fusion_ring, aa_times_ak, ak_times_ka, principal_graph
from .zsystem import decompose_zsystem, even_part, validate_system, zfusion_table

Result = tuple[str, bool, str]


def small_diagrams() -> list[str]:
    return [f"A{i}" for i in range(1, 9)] + [f"D{i}" for i in range(4, 9)] + ["E6", "E7", "E8"]


def all_diagrams() -> list[str]:
    return [f"A{i}" for i in range(1, 12)] + [f"D{i}" for i in range(4, 13)] + ["E6", "E7", "E8"]


def check_tables(names) -> Result:
    bad = []
    for s in names:
        g = build_diagram(s)
        t = esspath_table(g)
        if coxeter_number(g) != g.coxeter_number:
            bad.append(f"{s}: Coxeter number")
        if any((m < 0).any() for m in t.matrices) or any(not m.any() for m in t.matrices):
            bad.append(f"{s}: negative or vanishing table")
        if chebyshev_sequence(g.adjacency, g.coxeter_number)[-1].any():
            bad.append(f"{s}: E(h-1) != 0")
    return "essential path tables", not bad, "; ".join(bad)


def check_oracle(names, max_n: int = 6) -> Result:
    bad = []
    for s in names:
        g = build_diagram(s)
        t = esspath_table(g)
        for n in range(max_n + 1):
            ref = t[n] if n < len(t) else np.zeros_like(t[0])
            if not np.array_equal(esspath_oracle(g, n), ref):
                bad.append(f"{s} n={n}")
    return "oracle equivalence", not bad, "; ".join(bad)


def check_frobenius(names) -> Result:
    bad = []
    for s in names:
        K = build_diagram(s)
        for x in K.vertices:
            for y in K.vertices:
                back = ak_times_ka(K, y, x).as_dict()
                for n in range(K.coxeter_number - 1):
                    fwd = aa_times_ak(K, n, x).as_dict().get(y, 0)
                    if fwd != back.get(f"[{n}]", 0):
                        bad.append(f"{s} ({n},{x},{y})")
    return "Frobenius reciprocity", not bad, "; ".join(bad[:5])


def check_systems(names) -> Result:
    bad = []
    for s in names:
        try:
            sys = decompose_zsystem(build_diagram(s))
            problems = validate_system(sys) + zfusion_table(sys).check()
        except GHJError as exc:
            problems = [str(exc)]
        bad.extend(f"{s}: {p}" for p in problems)
    return "connection systems and ring axioms", not bad, "; ".join(bad[:5])


def check_indices() -> Result:
    want = [
        ("E6", "e0", 3 + math.sqrt(3), 1e-9),
        ("E7", "e0", 7.759, 5e-3),
        ("E8", "e0", 19.48, 5e-2),
    ]
    want += [(f"D{m}", "d0", 2.0, 1e-9) for m in range(4, 14)]
    want += [(f"A{n}", "a1", 4 * math.cos(math.pi / (n + 1)) ** 2, 1e-9) for n in range(2, 12)]
    bad = [f"{s},{x}" for s, x, v, tol in want if abs(ghj_index(build_diagram(s), x) - v) > tol]
    return "indices", not bad, "; ".join(bad)


def check_even_counts() -> Result:
    want = {f"D{2 * n}": (2 * n - 1, 2 * n + 2) for n in range(3, 7)}
    want.update({"E7": (9, 9), "E8": (15, 16)})
    bad = []
    for s, counts in want.items():
        K = build_diagram(s)
        x = "e0" if s[0] == "E" else "d1"
        got = (principal_graph(K, x).even_count, dual_principal_graph(K, x).even_count)
        if got != counts:
            bad.append(f"{s}: {got} != {counts}")
    return "even vertex counts", not bad, "; ".join(bad)


def check_e6_split() -> Result:
    rep = ghj_report(build_diagram("E6"), "e0")
    ok = rep.graphs_isomorphic and not rep.rings_isomorphic
    return "E6 graphs agree, rings differ", ok, ""


def check_commutativity() -> Result:
    bad = []
    names = [f"A{n}" for n in range(1, 12)] + [f"D{2 * n + 1}" for n in range(2, 6)] + ["E6", "E7", "E8"]
    for s in names:
        if not even_part(decompose_zsystem(build_diagram(s))).is_commutative()[0]:
            bad.append(f"{s} should commute")
    for n in range(2, 7):
        if even_part(decompose_zsystem(build_diagram(f"D{2 * n}"))).is_commutative()[0]:
            bad.append(f"D{2 * n} should not commute")
    return "commutativity of the even parts", not bad, "; ".join(bad)


def check_pipeline_a() -> Result:
    bad = []
    for m in range(1, 12):
        K = build_diagram(f"A{m}")
        sys = decompose_zsystem(K)
        table = esspath_table(K)
        perm = [next(k for k in range(m) if np.array_equal(w.n, table[k])) for w in sys.irreducibles]
        if not np.array_equal(zfusion_table(sys).N, aa_fusion_ring(m).N[np.ix_(perm, perm, perm)]):
            bad.append(f"A{m}")
    return "type A pipeline", not bad, "; ".join(bad)


def check_intermediates() -> Result:
    def expected(K):
        s, r = K.family, K.rank
        if s == "D" and r % 2:
            return {f"d{k}" for k in range(1, r - 2)}
        if s == "D":
            return set(K.vertices) - {"d0"}
        skip = {6: {"e0", "e4"}, 7: {"e0", "e4", "e5"}, 8: {"e0"}}[r]
        return set(K.vertices) - skip

    bad = []
    for s in [f"D{m}" for m in range(5, 14)] + ["E6", "E7", "E8"]:
        K = build_diagram(s)
        got = {v for v in K.vertices if intermediate_decomposition(K, v)}
        if got != expected(K):
            bad.append(s)
    return "intermediate subfactors", not bad, "; ".join(bad)


def check_pf(names) -> Result:
    bad = []
    for s in names:
        g = build_diagram(s)
        pf = perron_data(g)
        mu = pf.vector(g)
        if np.abs(g.adjacency @ mu - pf.beta * mu).max() > 1e-12 or mu.min() < 1 - 1e-12:
            bad.append(s)
    return "Perron-Frobenius data", not bad, "; ".join(bad)


def suite(full: bool) -> Iterator[Callable[[], Result]]:
    names = all_diagrams() if full else ["A5", "D5", "D6", "E6", "E7"]
    small = small_diagrams() if full else ["A4", "D5", "E6"]
    yield lambda: check_pf(names)
    yield lambda: check_tables(names)
    yield lambda: check_oracle(small)
    yield lambda: check_frobenius(names)
    yield lambda: check_systems(names)
    if full:
        yield check_indices
        yield check_even_counts
        yield check_e6_split
        yield check_commutativity
        yield check_pipeline_a
        yield check_intermediates
