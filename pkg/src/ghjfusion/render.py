"""Plain text, DOT and JSON renderings used by the command line."""

from __future__ import annotations

import json
from collections import defaultdict

import numpy as np

from .esspath import EssPathTable
from .ghj import GHJReport
from .sectors import FusionRing, PrincipalGraphData
from .zsystem import ConnectionSystem

SCHEMA_VERSION = 1


def dump_json(payload: dict) -> str:
    return json.dumps({"schemaVersion": SCHEMA_VERSION, **payload}, indent=2)


def _matrix(rows_lab, cols_lab, m) -> list[str]:
    width = max([len(c) for c in cols_lab] + [len(str(int(v))) for v in np.ravel(m)] + [1])
    lw = max(len(r) for r in rows_lab)
    out = [" " * lw + " " + " ".join(c.rjust(width) for c in cols_lab)]
    for lab, row in zip(rows_lab, m):
        cells = [(str(int(v)) if v else ".").rjust(width) for v in row]
        out.append(lab.ljust(lw) + " " + " ".join(cells))
    return out


def render_esspath_table(table: EssPathTable) -> str:
    labels = list(table.graph.vertices)
    lines = [f"essential paths on {table.graph.name}, h = {table.graph.coxeter_number}"]
    for n, m in enumerate(table.matrices):
        lines.append("")
        lines.append(f"n = {n}")
        lines.extend(_matrix(labels, labels, m))
    return "\n".join(lines) + "\n"


def render_system(sys: ConnectionSystem) -> str:
    labels = list(sys.diagram.vertices)
    lines = [f"{sys.diagram.name}-{sys.diagram.name} connections: {len(sys)} irreducibles ({sys.method})"]
    for w in sys.irreducibles:
        lines.append("")
        alias = f" [{w.alias}]" if w.alias else ""
        lines.append(f"{w.id}{alias}  qdim {w.qdim:.9f}  conjugate {w.conjugate}  {w.parity}")
        lines.extend(_matrix(labels, labels, w.n))
    return "\n".join(lines) + "\n"


def render_fusion_table(ring: FusionRing) -> str:
    ok, pair = ring.is_commutative()
    head = "commutative" if ok else f"noncommutative (witness {ring.basis[pair[0]]}, {ring.basis[pair[1]]})"
    lines = [f"fusion table over {ring.rank} elements, {head}"]
    for i in range(ring.rank):
        for j in range(ring.rank):
            lines.append(f"({ring.basis[i]}) x ({ring.basis[j]}) = {ring.format_product(i, j)}")
    return "\n".join(lines) + "\n"


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: PrincipalGraphData, name: str = "G") -> str:
    """Undirected DOT, one edge line per unit of multiplicity, ranks by depth."""
    lines = [f"graph {_q(name)} {{", "  node [shape=circle];"]
    by_depth = defaultdict(list)
    for v, d in g.even_vertices:
        by_depth[d].append(("e", v))
    for v, d in g.odd_vertices:
        by_depth[d].append(("o", v))
    for v, _ in g.even_vertices:
        shape = "doublecircle" if v == g.distinguished else "circle"
        lines.append(f"  {_q('even:' + v)} [label={_q(v)}, shape={shape}];")
    for v, _ in g.odd_vertices:
        lines.append(f"  {_q('odd:' + v)} [label={_q(v)}, shape=box];")
    for d in sorted(by_depth):
        names = " ".join(_q(("even:" if s == "e" else "odd:") + v) + ";" for s, v in by_depth[d])
        lines.append(f"  {{ rank=same; {names} }}")
    for a, b, m in g.edges():
        for _ in range(m):
            lines.append(f"  {_q('even:' + a)} -- {_q('odd:' + b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_report(rep: GHJReport) -> str:
    def ring_line(r: FusionRing) -> str:
        ok, _ = r.is_commutative()
        return f"rank {r.rank}, {'commutative' if ok else 'noncommutative'}"

    inter = "none"
    if rep.intermediate:
        it = rep.intermediate
        inter = f"{it['baseVertex']} * {it['irreducible']} (qdim {it['qdim']:.6f})"
    rows = [
        ("subfactor", f"GHJ({rep.diagram.name}, {rep.vertex})"),
        ("index", f"{rep.index:.10f}"),
        ("principal", f"{rep.principal.even_count} even, {rep.principal.odd_count} odd"),
        ("dual", f"{rep.dual.even_count} even, {rep.dual.odd_count} odd"),
        ("even counts", f"{rep.even_counts[0]} {'=' if rep.even_counts[0] == rep.even_counts[1] else '!='} {rep.even_counts[1]}"),
        ("graphs", "isomorphic" if rep.graphs_isomorphic else "not isomorphic"),
        ("N-N ring", ring_line(rep.nn_ring)),
        ("M-M ring", ring_line(rep.mm_ring)),
        ("rings", "isomorphic" if rep.rings_isomorphic else "not isomorphic"),
        ("intermediate", inter),
    ]
    lw = max(len(k) for k, _ in rows)
    body = [f"{k.ljust(lw)}  {v}" for k, v in rows]
    width = max(len(b) for b in body)
    bar = "+" + "-" * (width + 2) + "+"
    return "\n".join([bar] + [f"| {b.ljust(width)} |" for b in body] + [bar]) + "\n"
