"""Essential path dimensions.

The fast route is the Chebyshev recursion E(n+1) = E(n) adj - E(n-1).
The oracle builds Jones projections on the path space and measures the
complement of their join block by block; it never looks at the recursion.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .core import DynkinGraph, chebyshev_sequence, perron_data
from .errors import LengthTooLarge

ORACLE_MAX_LENGTH = 8
RANK_CUTOFF = 1e-7


@dataclass(frozen=True, eq=False)
class EssPathTable:
    graph: DynkinGraph
    matrices: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, n: int) -> np.ndarray:
        return self.matrices[n]

    def to_json(self) -> dict:
        return {
            "diagram": self.graph.name,
            "vertices": list(self.graph.vertices),
            "tables": [
                {"n": n, "rows": m.tolist()} for n, m in enumerate(self.matrices)
            ],
        }


_TABLES: dict[str, EssPathTable] = {}


def esspath_table(g: DynkinGraph) -> EssPathTable:
    """E(0) .. E(h-2) for the diagram, as read-only int64 matrices."""
    hit = _TABLES.get(g.name)
    if hit is not None:
        return hit
    mats = chebyshev_sequence(g.adjacency, g.coxeter_number - 1)
    for m in mats:
        m.setflags(write=False)
    table = EssPathTable(g, tuple(mats))
    _TABLES[g.name] = table
    return table


@dataclass
class PathSpaceModel:
    """Length-n paths on a graph with the Jones projections acting on them."""

    paths: list[tuple[int, ...]]
    projections: list[np.ndarray]
    beta: float

    def blocks(self) -> dict[tuple[int, int], list[int]]:
        out = defaultdict(list)
        for i, p in enumerate(self.paths):
            out[(p[0], p[-1])].append(i)
        return out


def path_space(g: DynkinGraph, n: int) -> PathSpaceModel:
    pf = perron_data(g)
    mu = pf.vector(g)
    adj = g.adjacency
    paths = [(v,) for v in range(g.size)]
    for _ in range(n):
        paths = [p + (int(w),) for p in paths for w in np.flatnonzero(adj[p[-1]])]
    index = {p: i for i, p in enumerate(paths)}
    projections = []
    for k in range(1, n):
        # e_k only touches the vertex at position k, and only on
        # paths that come back: p[k-1] == p[k+1]
        e = np.zeros((len(paths), len(paths)))
        for i, p in enumerate(paths):
            a = p[k - 1]
            if p[k + 1] != a:
                continue
            for w in np.flatnonzero(adj[a]):
                q = p[:k] + (int(w),) + p[k + 1:]
                e[index[q], i] = np.sqrt(mu[p[k]] * mu[w]) / (pf.beta * mu[a])
        projections.append(e)
    return PathSpaceModel(paths, projections, pf.beta)


def esspath_oracle(g: DynkinGraph, n: int) -> np.ndarray:
    """dim of the range of the Wenzl projector on each (start, end) block."""
    if n > ORACLE_MAX_LENGTH:
        raise LengthTooLarge(f"oracle length {n} exceeds {ORACLE_MAX_LENGTH}")
    if n < 0:
        raise ValueError("length must be nonnegative")
    model = path_space(g, n)
    out = np.zeros((g.size, g.size), dtype=np.int64)
    for (x, y), idx in model.blocks().items():
        if model.projections:
            # the join of the e_k is the projection onto the span of their ranges
            span = np.hstack([e[np.ix_(idx, idx)] for e in model.projections])
            s = np.linalg.svd(span, compute_uv=False)
            rank = int(np.sum(s > RANK_CUTOFF))
        else:
            rank = 0
        out[x, y] = len(idx) - rank
    return out
