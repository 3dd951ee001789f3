"""The k-th token graph F_k(G).

Vertices are the k-subsets of V(G) in lexicographic order, stored as
bitmasks. Two subsets are adjacent when their symmetric difference is an
edge {a, b} of G, and the token edge inherits w_ab.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, ResourceError
from .graph_core import WeightedGraph

DEFAULT_SIZE_CAP = 50_000
SIZE_CAP_ENV = "TOKENBOUND_SIZE_CAP"


def size_cap() -> int:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ArgumentError(f"{SIZE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ArgumentError(f"{SIZE_CAP_ENV} must be positive, got {cap}")
    return cap


def check_size(n: int, k: int) -> int:
    count = math.comb(n, k)
    cap = size_cap()
    if count > cap:
        raise ResourceError(f"token graph F_{k} of an order-{n} graph has binomial({n},{k}) = {count} "
                            f"vertices, above the cap of {cap} (set {SIZE_CAP_ENV} to raise it)")
    return count


@dataclass(frozen=True)
class TokenGraph:
    """F_k(G) with edges as parallel arrays.

    ``edge_a < edge_b`` are vertex positions, ``edge_w`` the inherited
    weight and ``edge_src`` the index of the generating edge of G.
    """

    base_n: int
    k: int
    masks: tuple[int, ...]
    edge_a: np.ndarray
    edge_b: np.ndarray
    edge_w: np.ndarray
    edge_src: np.ndarray
    subset_index: dict = field(repr=False, compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.masks)

    @property
    def num_edges(self) -> int:
        return len(self.edge_a)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return [tuple(i for i in range(self.base_n) if m >> i & 1) for m in self.masks]

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(a), int(b), float(w)) for a, b, w in zip(self.edge_a, self.edge_b, self.edge_w)]

    def index_of(self, subset) -> int:
        mask = subset if isinstance(subset, int) else sum(1 << i for i in subset)
        return self.subset_index[mask]

    def to_graph(self) -> WeightedGraph:
        """F_k(G) as an ordinary weighted graph on positions ``0..V-1``."""
        return WeightedGraph.from_edges(self.num_vertices, self.edges)

    def dump_edgelist(self) -> str:
        rows = [f"{self.num_vertices} {self.num_edges}"]
        rows += [f"{a} {b} {w!r}" for a, b, w in self.edges]
        return "\n".join(rows) + "\n"


def build(g: WeightedGraph, k: int) -> TokenGraph:
    n = g.n
    if not 1 <= k <= n - 1:
        raise ArgumentError(f"token count k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    check_size(n, k)
    masks = tuple(sum(1 << i for i in c) for c in itertools.combinations(range(n), k))
    index = {m: i for i, m in enumerate(masks)}

    ea, eb, ew, es = [], [], [], []
    verts = range(n)
    for src, ((a, b), w) in enumerate(zip(g.edges, g.weights)):
        others = [v for v in verts if v != a and v != b]
        for z in itertools.combinations(others, k - 1):
            zm = sum(1 << i for i in z)
            ia, ib = index[zm | 1 << a], index[zm | 1 << b]
            if ia > ib:
                ia, ib = ib, ia
            ea.append(ia)
            eb.append(ib)
            ew.append(w)
            es.append(src)
    order = np.lexsort((np.array(eb, dtype=np.int64), np.array(ea, dtype=np.int64))) if ea else np.array([], dtype=np.int64)
    return TokenGraph(
        base_n=n,
        k=k,
        masks=masks,
        edge_a=np.array(ea, dtype=np.int64)[order],
        edge_b=np.array(eb, dtype=np.int64)[order],
        edge_w=np.array(ew, dtype=float)[order],
        edge_src=np.array(es, dtype=np.int64)[order],
        subset_index=index,
    )


def total_weight(g: WeightedGraph, k: int) -> float:
    """Closed-form W(F_k(G)) = C(n,k) k(n-k) / (n(n-1)) W(G)."""
    n = g.n
    if not 1 <= k <= n - 1:
        raise ArgumentError(f"token count k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    return math.comb(n, k) * k * (n - k) / (n * (n - 1)) * g.total_weight
