"""The system of irreducible K-K connections and its fusion ring.

Each irreducible w is recorded through n(w), the matrix of vertical edge
multiplicities: n(w)[x, y] is how often w occurs in xbar * y.  Frobenius
reciprocity turns this into a Gram identity over pairs of vertices,

    G[(x,y),(x',y')] = sum_n E(n)[x,x'] E(n)[y,y'] = sum_w n(w)[x,y] n(w)[x',y'],

so the system is a nonnegative integer factorisation of G.

That identity alone does not pin the system down.  Apart from type A the
matrices n(w) are linearly dependent (they all commute with the adjacency
matrix), G has rank far below the number of irreducibles, and the
factorisation search happily returns systems that are too small.  The
default method therefore factorises a finer Gram matrix, the one over words
a+[l] a-[m] built from two commuting copies of the A_{h-1} fusion rules and
the modular invariant Z of K.  Its factorisation is rigid and yields the
fusion constants exactly.  For D_{2n}, where Z has an entry 2 and the ring
is noncommutative, the system is the graph algebra of D_{2n} extended by
the tail flip eps.  Every result is checked against the pair Gram identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import DynkinGraph, build_diagram, perron_data
from .errors import (
    AmbiguousDecomposition,
    DecompositionFailed,
    DependentRepresentation,
    NonIntegerSolution,
)
from .esspath import esspath_table
from .gram import GramFactorizer
from .modular import modular_invariant
from .sectors import FusionRing

NODE_CAP = 10**7


@dataclass(frozen=True)
class ProductGram:
    pairs: tuple[tuple[str, str], ...]
    G: np.ndarray


def product_gram(K: DynkinGraph) -> ProductGram:
    table = esspath_table(K)
    G = sum(np.kron(m, m) for m in table.matrices)
    pairs = tuple((x, y) for x in K.vertices for y in K.vertices)
    return ProductGram(pairs, np.asarray(G, dtype=np.int64))


@dataclass
class Irreducible:
    id: str
    n: np.ndarray
    qdim: float
    conjugate: str
    parity: str  # "even" or "odd"
    alias: str = ""


@dataclass
class ConnectionSystem:
    diagram: DynkinGraph
    irreducibles: list[Irreducible]
    method: str
    structure: np.ndarray | None = None  # N[i, j, k] in irreducible order, when known
    generator_note: str = "n(w0) = identity"
    diagnostics: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.irreducibles)

    def index(self, ident: str) -> int:
        for i, w in enumerate(self.irreducibles):
            if w.id == ident or (w.alias and w.alias == ident):
                return i
        raise KeyError(ident)

    def matrices(self) -> list[np.ndarray]:
        return [w.n for w in self.irreducibles]

    def even_indices(self) -> list[int]:
        return [i for i, w in enumerate(self.irreducibles) if w.parity == "even"]

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.name,
            "vertices": list(self.diagram.vertices),
            "method": self.method,
            "irreducibles": [
                {
                    "id": w.id,
                    "alias": w.alias,
                    "qdim": w.qdim,
                    "conjugate": w.conjugate,
                    "parity": w.parity,
                    "n": w.n.tolist(),
                }
                for w in self.irreducibles
            ],
            "structure": None
            if self.structure is None
            else [[int(i), int(j), int(k), int(self.structure[i, j, k])] for i, j, k in zip(*np.nonzero(self.structure))],
        }

    @classmethod
    def from_json(cls, data: dict) -> ConnectionSystem:
        K = build_diagram(data["diagram"])
        irr = [
            Irreducible(w["id"], np.array(w["n"], dtype=np.int64), float(w["qdim"]), w["conjugate"], w["parity"], w["alias"])
            for w in data["irreducibles"]
        ]
        N = None
        if data.get("structure") is not None:
            r = len(irr)
            N = np.zeros((r, r, r), dtype=np.int64)
            for i, j, k, m in data["structure"]:
                N[i, j, k] = m
        return cls(K, irr, data["method"], N)


# ---------------------------------------------------------------- validation


def _parity(K: DynkinGraph, n: np.ndarray) -> str | None:
    col = np.array(K.bipartition)
    same = col[:, None] == col[None, :]
    if not n[~same].any():
        return "even"
    if not n[same].any():
        return "odd"
    return None


def validate_system(sys: ConnectionSystem) -> list[str]:
    """Invariants of a connection system that fail; empty when all hold."""
    K = sys.diagram
    mu = perron_data(K).vector(K)
    mats = sys.matrices()
    bad = []
    if not mats or not np.array_equal(mats[0], np.eye(K.size, dtype=np.int64)):
        bad.append("first irreducible is not the identity")
    G = product_gram(K).G
    recon = sum(np.outer(m.ravel(), m.ravel()) for m in mats)
    if not np.array_equal(recon, G):
        bad.append("Gram reconstruction")
    ids = {w.id: w for w in sys.irreducibles}
    for w in sys.irreducibles:
        if (w.n < 0).any():
            bad.append(f"{w.id}: negative entry")
        if not np.array_equal(w.n @ K.adjacency, K.adjacency @ w.n):
            bad.append(f"{w.id}: does not commute with the adjacency")
        if np.abs(w.n @ mu - w.qdim * mu).max() > 1e-9 or w.qdim < 1 - 1e-9:
            bad.append(f"{w.id}: PF vector is not an eigenvector with eigenvalue qdim")
        if _parity(K, w.n) != w.parity:
            bad.append(f"{w.id}: parity")
        c = ids.get(w.conjugate)
        if c is None or not np.array_equal(c.n, w.n.T):
            bad.append(f"{w.id}: conjugate is not the transpose")
    return bad


# ---------------------------------------------------------------- chiral route


def _a_data(h: int) -> tuple[np.ndarray, np.ndarray]:
    """A_{h-1} fusion constants NA[a, b, c] and quantum dimensions."""
    NA = np.stack(esspath_table(build_diagram(f"A{h - 1}")).matrices)
    d = np.array([math.sin((a + 1) * math.pi / h) / math.sin(math.pi / h) for a in range(h - 1)])
    return NA, d


def _word_gram(NA: np.ndarray, Z: np.ndarray) -> np.ndarray:
    # <a+[a]a-[b], a+[c]a-[e]> = sum N[a,c,nu] N[b,e,rho] Z[nu,rho]
    k = len(Z)
    W = np.einsum("acn,ber,nr->abce", NA, NA, Z, optimize=True)
    return W.reshape(k * k, k * k)


@dataclass
class _Chiral:
    nmats: list[np.ndarray]
    N: np.ndarray
    qdims: list[float]
    origin: list[int]


def _chiral_structure(K, NA, dA, M, words, order) -> _Chiral | None:
    """Fusion constants and n-matrices read off a word factorisation M."""
    table = esspath_table(K)
    r = M.shape[1]
    basis: list[int] = []
    for p in order:
        trial = basis + [p]
        if np.linalg.matrix_rank(M[trial].astype(float)) == len(trial):
            basis = trial
            if len(basis) == r:
                break
    if len(basis) < r:
        return None
    MB = M[basis].astype(float)
    C = np.linalg.inv(MB)  # irreducible i = sum_p C[i, p] x_{basis[p]}
    k = len(dA)
    # products of basis words, expanded in irreducibles
    PV = np.zeros((r, r, r))
    for i, p in enumerate(basis):
        a, b = words[p]
        for j, q in enumerate(basis):
            c, e = words[q]
            coeff = np.outer(NA[a, c], NA[b, e]).reshape(k * k)
            PV[i, j] = coeff @ M
    Nf = np.einsum("ip,jq,pqs->ijs", C, C, PV, optimize=True)
    N = np.rint(Nf).astype(np.int64)
    if np.abs(Nf - N).max() > 1e-6 or (N < 0).any():
        return None
    wordn = [table[words[p][0]] @ table[words[p][1]] for p in basis]
    nmats = []
    for i in range(r):
        nf = sum(C[i, p] * wordn[p] for p in range(r))
        ni = np.rint(nf).astype(np.int64)
        if np.abs(nf - ni).max() > 1e-6 or (ni < 0).any():
            return None
        nmats.append(ni)
    qd = [float(sum(C[i, p] * dA[words[q][0]] * dA[words[q][1]] for p, q in enumerate(basis))) for i in range(r)]
    # exact check that w -> n(w) is a representation of the ring
    stack = np.stack(nmats)
    for i in range(r):
        for j in range(r):
            if not np.array_equal(nmats[i] @ nmats[j], np.tensordot(N[i, j], stack, axes=1)):
                return None
    # each irreducible remembers the first word (in processing order) containing it
    rank_of = {p: o for o, p in enumerate(order)}
    origin = [min(rank_of[p] for p in np.flatnonzero(M[:, i])) for i in range(r)]
    return _Chiral(nmats, N, qd, origin)


def _decompose_chiral(K: DynkinGraph, Z: np.ndarray, node_cap: int) -> ConnectionSystem:
    h = K.coxeter_number
    k = h - 1
    NA, dA = _a_data(h)
    W = _word_gram(NA, Z)
    r = int((Z * Z).sum())
    words = [(a, b) for a in range(k) for b in range(k)]
    order = sorted(range(len(words)), key=lambda i: (round(dA[words[i][0]] * dA[words[i][1]], 9), words[i]))
    found: dict[str, _Chiral] = {}

    def leaf(M: np.ndarray) -> bool:
        res = _chiral_structure(K, NA, dA, M, words, order)
        if res is None:
            return False
        found["res"] = res
        return True

    f = GramFactorizer(W, order, seeds=[W[0]], max_rank=r, leaf_check=leaf, max_nodes=node_cap)
    f.first()
    res = found["res"]
    labels = [f"<{words[order[o]][0]},{words[order[o]][1]}>" for o in res.origin]
    sys = _assemble(K, res.nmats, res.N, res.qdims, labels, res.origin, "chiral")
    sys.diagnostics["nodes"] = f.nodes
    sys.diagnostics["modular_invariant"] = Z.tolist()
    return sys


# ---------------------------------------------------------------- D_even route


def _tail_flip(K: DynkinGraph) -> np.ndarray:
    m = K.size
    P = np.eye(m, dtype=np.int64)
    P[[m - 2, m - 1]] = P[[m - 1, m - 2]]
    return P


def _tail_candidates(K: DynkinGraph, P: np.ndarray) -> list[np.ndarray]:
    """Integer X >= 0 with X adj = adj X, row d0 = e_t, X + P X P = E(m-2)."""
    m = K.size
    t = m - 2
    adj = K.adjacency.astype(float)
    spread = esspath_table(K)[m - 2]
    eye = np.eye(m)
    rows, rhs = [], []
    # X adj - adj X = 0, vectorised row-major
    comm = np.kron(eye, adj.T) - np.kron(adj, eye)
    rows.append(comm)
    rhs.append(np.zeros(m * m))
    sel = np.zeros((m, m * m))
    sel[np.arange(m), np.arange(m)] = 1.0  # row d0
    rows.append(sel)
    rhs.append(eye[t])
    rows.append(np.eye(m * m) + np.kron(P, P))
    rhs.append(spread.astype(float).ravel())
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    x0, *_ = np.linalg.lstsq(A, b, rcond=None)
    _, s, vt = np.linalg.svd(A)
    null = vt[np.sum(s > 1e-9):]
    if len(null) == 0:
        cands = [x0]
    elif len(null) == 1:
        y = null[0]
        vals = set()
        for i in np.flatnonzero(np.abs(y) > 1e-9):
            for c in range(int(spread.ravel()[i]) + 1):
                vals.add(round((c - x0[i]) / y[i], 9))
        cands = [x0 + v * y for v in sorted(vals)]
    else:
        raise DecompositionFailed(f"{K.name}: tail matrices not determined")
    out = []
    for x in cands:
        xi = np.rint(x).astype(np.int64)
        if np.abs(x - xi).max() < 1e-7 and (xi >= 0).all():
            X = xi.reshape(m, m)
            if not any(np.array_equal(X, o) for o in out):
                out.append(X)
    return out


def _decompose_d_even(K: DynkinGraph) -> ConnectionSystem:
    m = K.size
    table = esspath_table(K)
    mu = perron_data(K).vector(K)
    P = _tail_flip(K)
    sigma = list(range(m))
    sigma[m - 2], sigma[m - 1] = m - 1, m - 2
    systems = []
    for Gt in _tail_candidates(K, P):
        graph = [table[j] for j in range(m - 2)] + [Gt, P @ Gt @ P]
        # graph algebra constants from the d0 rows
        ND = np.stack([np.stack([(ga @ gb)[0] for gb in graph]) for ga in graph])
        ok = all(
            np.array_equal(graph[a] @ graph[b], sum(int(ND[a, b, c]) * graph[c] for c in range(m)))
            for a in range(m)
            for b in range(m)
        )
        if not ok or (ND < 0).any():
            continue
        r = 2 * m
        N = np.zeros((r, r, r), dtype=np.int64)
        # basis (a, s) <-> index a + s*m, meaning [a] eps^s; eps [b] = [sigma b] eps
        for a in range(m):
            for s in range(2):
                for b in range(m):
                    for t in range(2):
                        bb = sigma[b] if s else b
                        u = (s + t) % 2
                        N[a + s * m, b + t * m, u * m: (u + 1) * m] = ND[a, bb]
        nmats = graph + [g @ P for g in graph]
        qd = [float(mu[a]) for a in range(m)] * 2
        labels = [f"[{K.vertices[a]}]" for a in range(m)] + [f"[{K.vertices[a]}]eps" for a in range(m)]
        labels[m] = "eps"
        sys = _assemble(K, nmats, N, qd, labels, list(range(r)), "graph-algebra+eps")
        if validate_system(sys) or _ring_of(sys).check():
            continue
        systems.append(sys)
    if not systems:
        raise DecompositionFailed(f"{K.name}: no consistent tail matrices")
    if len(systems) > 1:
        from .iso import rings_isomorphic

        first = _ring_of(systems[0])
        if any(not rings_isomorphic(first, _ring_of(s)) for s in systems[1:]):
            raise AmbiguousDecomposition(f"{K.name}: several non-isomorphic systems", systems)
    return systems[0]


# ---------------------------------------------------------------- pair route


def _pair_leaf(K: DynkinGraph, mu: np.ndarray):
    m = K.size

    def check(M: np.ndarray) -> bool:
        mats = [M[:, w].reshape(m, m) for w in range(M.shape[1])]
        keys = sorted(x.tobytes() for x in mats)
        if sorted(x.T.copy().tobytes() for x in mats) != keys:
            return False
        for x in mats:
            if not np.array_equal(x @ K.adjacency, K.adjacency @ x) or _parity(K, x) is None:
                return False
            v = x @ mu
            if np.abs(v - (v[0] / mu[0]) * mu).max() > 1e-9:
                return False
        return True

    return check


def _decompose_pair(K: DynkinGraph, seed_epsilon: bool, node_cap: int, find_all: bool = False) -> list[ConnectionSystem]:
    pg = product_gram(K)
    m = K.size
    mu = perron_data(K).vector(K)
    prod = [mu[i // m] * mu[i % m] for i in range(m * m)]
    order = sorted(range(m * m), key=lambda i: (round(prod[i], 9), i))
    seeds = [np.eye(m, dtype=np.int64).ravel()]
    if seed_epsilon and K.family == "D" and K.rank % 2 == 0:
        seeds.append(_tail_flip(K).ravel())
    f = GramFactorizer(pg.G, order, seeds=seeds, leaf_check=_pair_leaf(K, mu), max_nodes=node_cap, find_all=find_all)
    sols = f.run()
    if not sols:
        raise DecompositionFailed(f"{K.name}: pair Gram search exhausted after {f.nodes} nodes")
    out = []
    for M in sols:
        nmats = [M[:, w].reshape(m, m) for w in range(M.shape[1])]
        qd = [float((x @ mu)[0] / mu[0]) for x in nmats]
        sys = _assemble(K, nmats, None, qd, [""] * len(nmats), list(range(len(nmats))), "pair")
        sys.diagnostics["nodes"] = f.nodes
        out.append(sys)
    return out


# ---------------------------------------------------------------- assembly


def _assemble(K, nmats, N, qdims, aliases, origin, method) -> ConnectionSystem:
    """Put irreducibles in canonical order and attach ids w0, w1, ..."""
    r = len(nmats)
    idn = np.eye(K.size, dtype=np.int64)
    pars = [_parity(K, x) or "mixed" for x in nmats]

    def key(i):
        return (not np.array_equal(nmats[i], idn), pars[i] != "even", round(qdims[i], 9), tuple(nmats[i].ravel()), origin[i])

    perm = sorted(range(r), key=key)
    # the identity must come first even if another irreducible has n = I
    if N is not None:
        ident = [i for i in range(r) if np.array_equal(N[i], np.eye(r, dtype=np.int64))]
        if ident:
            perm.remove(ident[0])
            perm.insert(0, ident[0])
    pos = {old: new for new, old in enumerate(perm)}
    ids = [f"w{i}" for i in range(r)]
    Nn = None
    if N is not None:
        Nn = N[np.ix_(perm, perm, perm)]
    irr = []
    for new, old in enumerate(perm):
        x = nmats[old]
        if Nn is not None:
            conj = int(np.flatnonzero(Nn[new, :, 0])[0])
        else:
            conj = next(pos[j] for j in perm if np.array_equal(nmats[j], x.T))
        irr.append(Irreducible(ids[new], np.array(x, dtype=np.int64), float(qdims[old]), ids[conj], pars[old], aliases[old]))
    return ConnectionSystem(K, irr, method, Nn)


@lru_cache(maxsize=None)
def _cached(name: str, method: str, seed_epsilon: bool, node_cap: int) -> ConnectionSystem:
    K = build_diagram(name)
    if method == "pair":
        return _decompose_pair(K, seed_epsilon, node_cap)[0]
    Z = modular_invariant(K)
    if Z.max() <= 1:
        sys = _decompose_chiral(K, Z, node_cap)
    elif seed_epsilon:
        sys = _decompose_d_even(K)
    else:
        return _decompose_pair(K, False, node_cap)[0]
    sys.diagnostics.setdefault("modular_invariant", Z.tolist())
    bad = validate_system(sys)
    if bad:
        raise DecompositionFailed(f"{K.name}: {'; '.join(bad)}")
    if len(sys) != int((Z * Z).sum()):
        raise DecompositionFailed(f"{K.name}: {len(sys)} irreducibles, expected {int((Z * Z).sum())}")
    return sys


def decompose_zsystem(
    K: DynkinGraph, method: str = "auto", seed_epsilon: bool = True, node_cap: int = NODE_CAP
) -> ConnectionSystem:
    """Irreducible K-K connections of K.

    method "auto" uses the chiral word factorisation (or graph algebra plus
    eps for D_even); method "pair" runs the bare pair Gram search, which is
    only reliable for type A.
    """
    if method not in ("auto", "pair"):
        raise ValueError(f"unknown method {method!r}")
    return _cached(K.name, method, seed_epsilon, node_cap)


# ---------------------------------------------------------------- fusion table


def _ring_of(sys: ConnectionSystem) -> FusionRing:
    ids = [w.id for w in sys.irreducibles]
    return FusionRing(
        tuple(ids),
        0,
        tuple(ids.index(w.conjugate) for w in sys.irreducibles),
        sys.structure,
        tuple(w.qdim for w in sys.irreducibles),
    )


def representation_defect(sys: ConnectionSystem, N: np.ndarray) -> list[tuple[int, int]]:
    """Pairs (i, j) where n(w_i) n(w_j) != sum_k N[i,j,k] n(w_k)."""
    mats = sys.matrices()
    bad = []
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            rhs = np.tensordot(N[i, j], np.stack(mats), axes=1)
            if not np.array_equal(a @ b, rhs):
                bad.append((i, j))
    return bad


def zfusion_table(sys: ConnectionSystem) -> FusionRing:
    """Fusion ring of the system.

    When the n(w) are linearly independent the constants are the unique
    solution of n(w_i) n(w_j) = sum_k N[i,j,k] n(w_k).  Otherwise they are
    taken from the construction of the system, if it recorded them, and
    checked against the same identity.
    """
    mats = np.stack([m.ravel() for m in sys.matrices()]).astype(float)
    r = len(mats)
    independent = np.linalg.matrix_rank(mats) == r
    if independent:
        prods = np.stack(
            [(a @ b).ravel() for a in sys.matrices() for b in sys.matrices()]
        ).astype(float)
        sol, *_ = np.linalg.lstsq(mats.T, prods.T, rcond=None)
        Nf = sol.T.reshape(r, r, r)
        N = np.rint(Nf).astype(np.int64)
        if np.abs(Nf - N).max() > 1e-6 or (N < 0).any():
            raise NonIntegerSolution(f"{sys.diagram.name}: fusion constants are not nonnegative integers")
        if sys.structure is not None and not np.array_equal(N, sys.structure):
            raise NonIntegerSolution(f"{sys.diagram.name}: solved constants disagree with construction")
    elif sys.structure is not None:
        N = sys.structure
    else:
        raise DependentRepresentation(
            f"{sys.diagram.name}: the {r} matrices n(w) span only "
            f"{np.linalg.matrix_rank(mats)} dimensions; fusion constants are underdetermined"
        )
    if representation_defect(sys, N):
        raise NonIntegerSolution(f"{sys.diagram.name}: constants do not reproduce n(w_i) n(w_j)")
    ids = [w.id for w in sys.irreducibles]
    return FusionRing(
        tuple(ids),
        0,
        tuple(ids.index(w.conjugate) for w in sys.irreducibles),
        np.asarray(N, dtype=np.int64),
        tuple(w.qdim for w in sys.irreducibles),
    )


def is_commutative(ring: FusionRing) -> tuple[bool, tuple[str, str] | None]:
    ok, pair = ring.is_commutative()
    if ok:
        return True, None
    return False, (ring.basis[pair[0]], ring.basis[pair[1]])


def even_part(sys: ConnectionSystem) -> FusionRing:
    ring = zfusion_table(sys)
    return ring.subring(sys.even_indices())
