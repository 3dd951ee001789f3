"""Independent reference computations used only by the tests.

Nothing here calls into the package beyond reading ``WeightedGraph`` fields,
so agreement with the library is a genuine cross-check.
"""

from __future__ import annotations

import itertools
import math
from functools import reduce

import numpy as np
from scipy.optimize import linprog

I2 = np.eye(2)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
PZ = np.diag([1.0, -1.0]).astype(complex)

# coefficients of (II, XX, YY, ZZ) in each edge term
TERMS = {
    "qmc": (0.5, -0.5, -0.5, -0.5),
    "xy": (0.5, -0.5, -0.5, 0.0),
    "epr": (0.5, 0.5, -0.5, 0.5),
}


def _two_site(n: int, i: int, j: int, op: np.ndarray) -> np.ndarray:
    ops = [I2] * n
    ops[i] = op
    ops[j] = op
    return reduce(np.kron, ops)


def pauli_hamiltonian(g, problem: str) -> np.ndarray:
    """Full 2^n x 2^n Hamiltonian built from Kronecker products of Pauli matrices."""
    a, bx, by, bz = TERMS[problem]
    dim = 2 ** g.n
    h = np.zeros((dim, dim), dtype=complex)
    for (i, j), w in zip(g.edges, g.weights):
        term = a * np.eye(dim)
        for coef, op in ((bx, PX), (by, PY), (bz, PZ)):
            if coef:
                term = term + coef * _two_site(g.n, i, j, op)
        h += w * term
    return h


def pauli_extremes(g, problem: str) -> tuple[float, float]:
    ev = np.linalg.eigvalsh(pauli_hamiltonian(g, problem))
    return float(ev[-1]), float(ev[0])


def burnside_graph_count(n: int) -> int:
    """Number of unlabelled graphs on n vertices by Burnside's lemma over cycle types."""
    if n <= 1:
        return 1
    total = 0

    def partitions(rest, largest):
        if rest == 0:
            yield []
            return
        for part in range(min(rest, largest), 0, -1):
            for tail in partitions(rest - part, part):
                yield [part] + tail

    for cyc in partitions(n, n):
        orbits = sum(c // 2 for c in cyc)
        orbits += sum(math.gcd(a, b) for a, b in itertools.combinations(cyc, 2))
        size = math.factorial(n)
        for length in set(cyc):
            mult = cyc.count(length)
            size //= length ** mult * math.factorial(mult)
        total += size * 2 ** orbits
    return total // math.factorial(n)


def brute_matchings(g) -> list[tuple[int, ...]]:
    out = []
    for r in range(g.n // 2 + 1):
        for combo in itertools.combinations(range(len(g.edges)), r):
            ends = [v for i in combo for v in g.edges[i]]
            if len(ends) == len(set(ends)):
                out.append(combo)
    return out


def brute_max_matching(g, max_edges: int | None = None) -> float:
    best = 0.0
    for combo in brute_matchings(g):
        if max_edges is None or len(combo) <= max_edges:
            best = max(best, sum(g.weights[i] for i in combo))
    return best


def brute_max_cut(g) -> float:
    best = 0.0
    for bits in itertools.product((0, 1), repeat=g.n):
        best = max(best, sum(w for (u, v), w in zip(g.edges, g.weights) if bits[u] != bits[v]))
    return best


def lp_in_matching_polytope(g, z, tol: float = 1e-9) -> bool:
    """Is z a convex combination of matching incidence vectors?  Decided by an LP."""
    mats = brute_matchings(g)
    a = np.zeros((len(g.edges) + 1, len(mats)))
    for col, combo in enumerate(mats):
        a[list(combo), col] = 1.0
    a[-1, :] = 1.0
    b = np.append(np.asarray(z, dtype=float), 1.0)
    # minimise the l1 residual so near-boundary points are judged with a tolerance
    m = a.shape[0]
    cost = np.concatenate([np.zeros(len(mats)), np.ones(2 * m)])
    a_eq = np.hstack([a, np.eye(m), -np.eye(m)])
    res = linprog(cost, A_eq=a_eq, b_eq=b, bounds=(0, None), method="highs")
    return bool(res.status == 0 and res.fun <= tol * 10)


def brute_token_graph(g, k: int):
    """(vertex list of sorted k-tuples, set of index pairs, weight per pair) by direct definition."""
    verts = list(itertools.combinations(range(g.n), k))
    where = {v: i for i, v in enumerate(verts)}
    wt = {e: w for e, w in zip(g.edges, g.weights)}
    pairs = {}
    for a, b in itertools.combinations(verts, 2):
        diff = tuple(sorted(set(a) ^ set(b)))
        if len(diff) == 2 and diff in wt:
            pairs[(where[a], where[b])] = wt[diff]
    return verts, pairs


def brute_token_matrix(g, k: int, kind: str) -> np.ndarray:
    verts, pairs = brute_token_graph(g, k)
    adj = np.zeros((len(verts), len(verts)))
    for (i, j), w in pairs.items():
        adj[i, j] = adj[j, i] = w
    deg = np.diag(adj.sum(axis=1))
    return {"L": deg - adj, "Q": deg + adj, "A": adj}[kind]


def is_factor_critical(g) -> bool:
    """Delete each vertex and search for a perfect matching among all matchings."""
    if g.n % 2 == 0:
        return False
    mats = brute_matchings(g)
    for v in range(g.n):
        if not any(len(m) == (g.n - 1) // 2 and all(v not in g.edges[i] for i in m) for m in mats):
            return False
    return True
