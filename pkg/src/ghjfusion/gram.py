"""Nonnegative integer factorisation of Gram matrices.

Given a symmetric integer matrix G indexed by "words", find a matrix M with
nonnegative integer entries and G = M M^T.  Columns of M are irreducibles,
M[p, w] is the multiplicity of irreducible w inside word p.

Words are resolved one at a time in a fixed order.  For the current word the
inner products with already resolved words pin down how much of each known
irreducible it contains; whatever norm is left over is split into new
irreducibles following a partition of the residual into squares.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator, Sequence

import numpy as np

from .errors import DecompositionFailed


def square_partitions(s: int, maxpart: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples b with sum(b_i^2) == s."""
    if s == 0:
        yield ()
        return
    top = math.isqrt(s)
    if maxpart is not None:
        top = min(top, maxpart)
    for b in range(top, 0, -1):
        for rest in square_partitions(s - b * b, b):
            yield (b,) + rest


class GramFactorizer:
    """Depth-first search for G = M M^T with M >= 0 integral.

    seeds: full columns that are known in advance (e.g. the identity).
    max_rank: cap on the number of columns; once the resolved words reach
    this rank the remaining rows follow by linear algebra.
    leaf_check: callable on the finished M; returning False rejects it.
    """

    def __init__(
        self,
        G: Sequence[Sequence[int]] | np.ndarray,
        order: Sequence[int],
        seeds: Sequence[Sequence[int]] = (),
        max_rank: int | None = None,
        leaf_check: Callable[[np.ndarray], bool] | None = None,
        max_nodes: int = 10**7,
        find_all: bool = False,
    ):
        self.G = np.asarray(G, dtype=np.int64)
        self.N = len(self.G)
        self.order = list(order)
        self.seeds = [list(int(v) for v in s) for s in seeds]
        self.max_rank = max_rank
        self.leaf_check = leaf_check
        self.max_nodes = max_nodes
        self.find_all = find_all
        self.nodes = 0

    def run(self) -> list[np.ndarray]:
        """All solutions found (at most one unless find_all)."""
        self.val: dict[int, list[int]] = {}
        self.ncols = len(self.seeds)
        self.processed: list[int] = []
        self.solutions: list[np.ndarray] = []
        self._step()
        return self.solutions

    def first(self) -> np.ndarray:
        sols = self.run()
        if not sols:
            raise DecompositionFailed("Gram factorisation search exhausted")
        return sols[0]

    def _done(self) -> bool:
        return bool(self.solutions) and not self.find_all

    def _step(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise DecompositionFailed(f"node cap {self.max_nodes} exceeded")
        if len(self.processed) == self.N:
            self._accept(np.array([self.val[p] for p in range(self.N)], dtype=np.int64))
            return
        if self.max_rank is not None and self.ncols == self.max_rank and self._full_rank():
            self._complete()
            return
        p = self.order[len(self.processed)]
        for a, part in self._enum(p):
            if self.max_rank is not None and self.ncols + len(part) > self.max_rank:
                continue
            k = len(part)
            for q in self.processed:
                self.val[q].extend([0] * k)
            self.val[p] = a + list(part)
            self.ncols += k
            self.processed.append(p)
            self._step()
            self.processed.pop()
            del self.val[p]
            self.ncols -= k
            for q in self.processed:
                del self.val[q][len(self.val[q]) - k:]
            if self._done():
                return

    def _full_rank(self) -> bool:
        mp = np.array([self.val[q] for q in self.processed], dtype=float)
        return int(np.linalg.matrix_rank(mp)) == self.ncols

    def _complete(self) -> None:
        proc = self.processed
        mp = np.array([self.val[q] for q in proc], dtype=float)
        rest = [i for i in range(self.N) if i not in self.val]
        targets = self.G[np.ix_(proc, rest)].astype(float)
        coef, *_ = np.linalg.lstsq(mp, targets, rcond=None)
        rows = np.rint(coef.T).astype(np.int64)
        if np.abs(coef.T - rows).max(initial=0) > 1e-6 or (rows < 0).any():
            return
        m = np.zeros((self.N, self.ncols), dtype=np.int64)
        for q in proc:
            m[q] = self.val[q]
        m[rest] = rows
        self._accept(m)

    def _accept(self, m: np.ndarray) -> None:
        if not np.array_equal(m @ m.T, self.G):
            return
        if self.leaf_check is not None and not self.leaf_check(m):
            return
        self.solutions.append(m)

    def _enum(self, p: int) -> Iterator[tuple[list[int], tuple[int, ...]]]:
        proc = self.processed
        cols = self.ncols
        targets = [int(self.G[q, p]) for q in proc]
        norm = int(self.G[p, p])
        fixed = {si: s[p] for si, s in enumerate(self.seeds)}
        colv = [[self.val[q][w] for q in proc] for w in range(cols)]
        rem = targets[:]
        for w, a in fixed.items():
            if a:
                for qi in range(len(proc)):
                    rem[qi] -= a * colv[w][qi]
            norm -= a * a
        if norm < 0 or any(r < 0 for r in rem):
            return
        free = [w for w in range(cols) if w not in fixed]
        # position of the last free column that can still feed each target
        last = [-1] * len(proc)
        for k, w in enumerate(free):
            for qi in range(len(proc)):
                if colv[w][qi]:
                    last[qi] = k
        if any(rem[qi] > 0 and last[qi] < 0 for qi in range(len(proc))):
            return
        # identical columns are interchangeable: force nonincreasing values
        same_prev = [k > 0 and colv[free[k]] == colv[free[k - 1]] for k in range(len(free))]
        a = [0] * cols
        for w, v in fixed.items():
            a[w] = v
        out: list[tuple[list[int], int]] = []

        def rec(k: int, normleft: int, prev: int) -> None:
            if k == len(free):
                if all(r == 0 for r in rem):
                    out.append((a[:], normleft))
                return
            w = free[k]
            cv = colv[w]
            ub = math.isqrt(normleft)
            for qi, c in enumerate(cv):
                if c:
                    ub = min(ub, rem[qi] // c)
            if same_prev[k]:
                ub = min(ub, prev)
            for x in range(ub, -1, -1):
                if x:
                    for qi, c in enumerate(cv):
                        if c:
                            rem[qi] -= x * c
                if all(not (rem[qi] > 0 and last[qi] <= k) for qi in range(len(proc))):
                    a[w] = x
                    rec(k + 1, normleft - x * x, x)
                    a[w] = 0
                if x:
                    for qi, c in enumerate(cv):
                        if c:
                            rem[qi] += x * c

        rec(0, norm, 1 << 30)
        for vec, s in out:
            # more, smaller new irreducibles first
            for part in sorted(square_partitions(s), key=lambda t: -len(t)):
                yield vec, part
