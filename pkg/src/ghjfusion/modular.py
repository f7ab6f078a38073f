"""The modular invariant attached to a diagram.

Z is the nonnegative integer matrix commuting with the level-(h-2) SU(2)
S matrix, supported on pairs with equal T eigenvalue, whose diagonal
counts how often each exponent occurs in the spectrum of the diagram.
For every ADE diagram these conditions leave no free parameter.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DynkinGraph
from .errors import DecompositionFailed


def s_matrix(h: int) -> np.ndarray:
    k = h - 1
    a = np.arange(1, k + 1)
    return math.sqrt(2.0 / h) * np.sin(np.outer(a, a) * math.pi / h)


def exponent_multiplicities(g: DynkinGraph) -> list[int]:
    """How often 2cos((l+1)pi/h) is an eigenvalue of the adjacency, l = 0..h-2."""
    h = g.coxeter_number
    ev = np.linalg.eigvalsh(g.adjacency.astype(float))
    return [
        int(np.sum(np.abs(ev - 2 * math.cos((l + 1) * math.pi / h)) < 1e-9))
        for l in range(h - 1)
    ]


def t_equal(a: int, b: int, h: int) -> bool:
    return ((a + 1) ** 2 - (b + 1) ** 2) % (4 * h) == 0


def modular_invariant(g: DynkinGraph) -> np.ndarray:
    h = g.coxeter_number
    k = h - 1
    s = s_matrix(h)
    diag = exponent_multiplicities(g)
    unknowns = [(a, b) for a in range(k) for b in range(k) if t_equal(a, b, h)]
    pos = {v: i for i, v in enumerate(unknowns)}
    rows, rhs = [], []
    for a in range(k):
        for b in range(k):
            row = np.zeros(len(unknowns))
            for c in range(k):
                if (a, c) in pos:
                    row[pos[(a, c)]] += s[c, b]
                if (c, b) in pos:
                    row[pos[(c, b)]] -= s[a, c]
            rows.append(row)
            rhs.append(0.0)
    for a in range(k):
        row = np.zeros(len(unknowns))
        row[pos[(a, a)]] = 1.0
        rows.append(row)
        rhs.append(float(diag[a]))
    m = np.array(rows)
    sol, _, rank, _ = np.linalg.lstsq(m, np.array(rhs), rcond=None)
    if rank < len(unknowns):
        raise DecompositionFailed(f"{g.name}: modular invariant not determined")
    z = np.zeros((k, k))
    for v, i in pos.items():
        z[v] = sol[i]
    zi = np.rint(z).astype(np.int64)
    if np.abs(z - zi).max() > 1e-8 or (zi < 0).any() or zi[0, 0] != 1:
        raise DecompositionFailed(f"{g.name}: modular invariant is not a nonnegative integer matrix")
    return zi
