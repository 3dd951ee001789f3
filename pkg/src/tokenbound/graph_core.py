"""Weighted simple graphs, graph6 I/O, generators and isomorph-free enumeration.

Vertices are ``0..n-1``. Edges are kept sorted lexicographically and that
order is the edge indexing used by every per-edge vector in the package.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ArgumentError, ParseError, UnsupportedOrderError

ENUMERATION_LIMIT = 7
GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with strictly positive edge weights."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[float, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {self.n}")
        if len(self.edges) != len(self.weights):
            raise ArgumentError("edges and weights differ in length")
        seen = {}
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ArgumentError(f"edge ({u}, {v}) not of the form 0 <= u < v < {self.n}")
            if (u, v) in seen:
                raise ArgumentError(f"duplicate edge ({u}, {v})")
            seen[(u, v)] = i
        for w in self.weights:
            if not (math.isfinite(w) and w > 0):
                raise ArgumentError(f"edge weights must be finite and positive, got {w}")
        if list(self.edges) != sorted(self.edges):
            raise ArgumentError("edges must be sorted; use WeightedGraph.from_edges")
        object.__setattr__(self, "_index", seen)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], weights: Iterable[float] | None = None) -> "WeightedGraph":
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` tuples in any order."""
        items = []
        edges = list(edges)
        if weights is not None:
            weights = [float(w) for w in weights]
            if len(weights) != len(edges):
                raise ArgumentError("edges and weights differ in length")
        for i, e in enumerate(edges):
            if len(e) == 3:
                u, v, w = e
            elif len(e) == 2:
                u, v = e
                w = 1.0 if weights is None else weights[i]
            else:
                raise ArgumentError(f"bad edge record {e!r}")
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            items.append(((u, v), float(w)))
        items.sort(key=lambda t: t[0])
        return cls(int(n), tuple(e for e, _ in items), tuple(w for _, w in items))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        return float(math.fsum(self.weights))

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1.0 for w in self.weights)

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self._index[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._index

    def weight(self, u: int, v: int) -> float:
        return self.weights[self.edge_index(u, v)]

    def neighbors(self, i: int) -> list[int]:
        return [v if u == i else u for (u, v) in self.edges if i in (u, v)]

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for (u, v), w in zip(self.edges, self.weights):
            a[u, v] = a[v, u] = w
        return a

    def with_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, tuple(float(w) for w in weights))

    def unweighted(self) -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, (1.0,) * self.m)


@dataclass(frozen=True)
class GraphPredicates:
    connected: bool
    bipartite: bool
    biconnected: bool
    factor_critical: bool
    triangle_free: bool


class FamilyKind(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    STAR = "star"
    COMPLETE_BIPARTITE = "bipartite"
    ERDOS_RENYI = "er"


@dataclass(frozen=True)
class GraphFamily:
    """A named graph family.

    ``params`` holds ``(n,)`` for path, cycle and complete graphs, ``(m,)``
    for the star with ``m`` leaves, ``(a, b)`` for complete bipartite graphs
    and ``(n, p)`` for Erdos-Renyi graphs. ``weights`` is one of ``"unit"``,
    ``"uniform"`` (on (0, 1]) or ``"exponential"`` with the given ``rate``.
    """

    kind: FamilyKind
    params: tuple
    seed: int | None = None
    weights: str = "unit"
    rate: float = 1.0


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> WeightedGraph:
    if n < 3:
        raise ArgumentError(f"cycle needs at least 3 vertices, got {n}")
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(m: int) -> WeightedGraph:
    """Star with centre 0 and leaves ``1..m``."""
    return WeightedGraph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def complete_bipartite_graph(a: int, b: int) -> WeightedGraph:
    return WeightedGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _draw_weights(rng: np.random.Generator, count: int, kind: str, rate: float) -> list[float]:
    if kind == "unit":
        return [1.0] * count
    if kind == "uniform":
        # 1 - U[0,1) lies in (0, 1], so weights stay strictly positive
        return list(1.0 - rng.random(count))
    if kind == "exponential":
        if rate <= 0:
            raise ArgumentError(f"exponential rate must be positive, got {rate}")
        w = rng.exponential(1.0 / rate, count)
        return [float(x) if x > 0 else float(np.finfo(float).tiny) for x in w]
    raise ArgumentError(f"unknown weight distribution {kind!r}")


def erdos_renyi(n: int, p: float, seed: int, weights: str = "uniform", rate: float = 1.0) -> WeightedGraph:
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"edge probability must lie in [0, 1], got {p}")
    if n < 1:
        raise ArgumentError(f"vertex count must be positive, got {n}")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    chosen = [e for e, k in zip(pairs, keep) if k]
    return WeightedGraph.from_edges(n, chosen, _draw_weights(rng, len(chosen), weights, rate))


def generate(family: GraphFamily) -> WeightedGraph:
    kind, params = family.kind, tuple(family.params)
    try:
        if kind is FamilyKind.ERDOS_RENYI:
            n, p = params
            if family.seed is None:
                raise ArgumentError("Erdos-Renyi graphs need a seed")
            return erdos_renyi(int(n), float(p), family.seed, family.weights, family.rate)
        ints = [int(x) for x in params]
        if any(x != y for x, y in zip(ints, params)) or any(x < 1 for x in ints):
            raise ArgumentError(f"{kind.value} parameters must be positive integers, got {params}")
        if kind is FamilyKind.PATH:
            (n,) = ints
            g = path_graph(n)
        elif kind is FamilyKind.CYCLE:
            (n,) = ints
            g = cycle_graph(n)
        elif kind is FamilyKind.COMPLETE:
            (n,) = ints
            g = complete_graph(n)
        elif kind is FamilyKind.STAR:
            (m,) = ints
            g = star_graph(m)
        elif kind is FamilyKind.COMPLETE_BIPARTITE:
            a, b = ints
            g = complete_bipartite_graph(a, b)
        else:
            raise ArgumentError(f"unknown family {kind}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ArgumentError):
            raise
        raise ArgumentError(f"bad parameters {params} for {kind.value}") from exc
    if family.weights != "unit":
        rng = np.random.default_rng(family.seed)
        g = g.with_weights(_draw_weights(rng, g.m, family.weights, family.rate))
    return g


def parse_family(text: str, seed: int | None = None) -> WeightedGraph:
    """Parse ``kind:args`` such as ``cycle:5``, ``bipartite:2,3`` or ``er:6,0.5``."""
    kind_text, _, arg_text = text.partition(":")
    try:
        kind = FamilyKind(kind_text.strip().lower())
    except ValueError:
        names = ", ".join(k.value for k in FamilyKind)
        raise ArgumentError(f"unknown family {kind_text!r}; expected one of {names}") from None
    try:
        params = tuple(float(x) if "." in x else int(x) for x in arg_text.split(",") if x.strip())
    except ValueError:
        raise ArgumentError(f"bad family parameters {arg_text!r}") from None
    weights = "uniform" if kind is FamilyKind.ERDOS_RENYI else "unit"
    return generate(GraphFamily(kind, params, seed=0 if seed is None else seed, weights=weights))


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: bytes | str) -> WeightedGraph:
    """Decode one short-form graph6 record into an unweighted graph."""
    if isinstance(line, str):
        line = line.encode("ascii", errors="replace")
    data = line.rstrip(b"\r\n")
    start = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        start = len(GRAPH6_HEADER)
    if len(data) <= start:
        raise ParseError("empty graph6 record", offset=start)
    for off in range(start, len(data)):
        if not 63 <= data[off] <= 126:
            raise ParseError(f"character {data[off]!r} outside graph6 range 63..126", offset=off)
    n = data[start] - 63
    if n == 63:
        raise ParseError("long-form vertex counts (n >= 63) are not supported", offset=start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start + 1:]
    if len(body) < nbytes:
        raise ParseError(f"record truncated: {n} vertices need {nbytes} adjacency bytes, found {len(body)}",
                         offset=start + 1 + len(body))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after adjacency data", offset=start + 1 + nbytes)
    edges = []
    for idx, (i, j) in enumerate(_pairs(n)):
        byte = body[idx // 6] - 63
        if (byte >> (5 - idx % 6)) & 1:
            edges.append((i, j))
    if nbits % 6:
        pad_mask = (1 << (6 - nbits % 6)) - 1
        if (body[-1] - 63) & pad_mask:
            raise ParseError("nonzero padding bits", offset=start + nbytes)
    return WeightedGraph.from_edges(n, edges)


def write_graph6(g: WeightedGraph) -> str:
    """Encode the topology of ``g`` as a short-form graph6 record."""
    if g.n >= 63:
        raise ArgumentError("graph6 short form supports n < 63")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p:p + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def read_graph6_stream(lines: Iterable[bytes | str]) -> Iterator[tuple[int, WeightedGraph | ParseError]]:
    """Yield ``(lineno, graph)`` per record, or ``(lineno, ParseError)`` for bad lines.

    Blank lines are skipped. The caller decides whether errors are fatal.
    """
    for lineno, raw in enumerate(lines, start=1):
        text = raw.decode("ascii", errors="replace") if isinstance(raw, bytes) else raw
        if not text.strip():
            continue
        try:
            yield lineno, parse_graph6(text.strip())
        except ParseError as exc:
            yield lineno, ParseError(str(exc), offset=exc.offset, line=lineno)


def parse_edgelist(text: str) -> WeightedGraph:
    """Parse the weighted edge-list format: ``n m`` then ``m`` lines ``u v w``."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty edge list", line=1)
    head = lines[0].split()
    try:
        n, m = int(head[0]), int(head[1])
    except (ValueError, IndexError):
        raise ParseError(f"header must be 'n m', got {lines[0]!r}", line=1) from None
    if len(lines) - 1 != m:
        raise ParseError(f"header promises {m} edges, found {len(lines) - 1}", line=1)
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) > 2 else 1.0
        except (ValueError, IndexError):
            raise ParseError(f"bad edge record {ln!r}", line=lineno) from None
        if len(parts) > 3:
            raise ParseError(f"bad edge record {ln!r}", line=lineno)
        edges.append((u, v, w))
    try:
        return WeightedGraph.from_edges(n, edges)
    except ArgumentError as exc:
        raise ParseError(str(exc)) from exc


def write_edgelist(g: WeightedGraph) -> str:
    rows = [f"{g.n} {g.m}"]
    rows += [f"{u} {v} {w!r}" for (u, v), w in zip(g.edges, g.weights)]
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Canonical forms and enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """For every permutation, the pair index read for each canonical pair slot."""
    pairs = list(_pairs(n))
    pos = {p: i for i, p in enumerate(pairs)}
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for c, (i, j) in enumerate(pairs):
        a, b = perms[:, i], perms[:, j]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        table[:, c] = [pos[(x, y)] for x, y in zip(lo, hi)]
    place = 1 << np.arange(len(pairs) - 1, -1, -1, dtype=np.int64)
    return table, place


def _bit_vector(g: WeightedGraph) -> np.ndarray:
    return np.array([g.has_edge(i, j) for i, j in _pairs(g.n)], dtype=np.int64)


def _canonical_codes(bitrows: np.ndarray, n: int) -> np.ndarray:
    """Minimal adjacency code over all relabelings, for each row of ``bitrows``."""
    table, place = _permutation_table(n)
    if table.shape[1] == 0:
        return np.zeros(len(bitrows), dtype=np.int64)
    codes = np.empty(len(bitrows), dtype=np.int64)
    chunk = max(1, 200_000 // table.size)
    for r in range(0, len(bitrows), chunk):
        block = bitrows[r:r + chunk]
        codes[r:r + chunk] = (block[:, table] @ place).min(axis=1)
    return codes


def _graph_from_code(code: int, n: int) -> WeightedGraph:
    pairs = list(_pairs(n))
    nb = len(pairs)
    edges = [p for idx, p in enumerate(pairs) if (code >> (nb - 1 - idx)) & 1]
    return WeightedGraph.from_edges(n, edges)


def canonical_form(g: WeightedGraph) -> WeightedGraph:
    """Relabeled copy of ``g`` whose adjacency bit string is minimal."""
    if g.n > ENUMERATION_LIMIT:
        raise UnsupportedOrderError(f"canonical labelling is limited to n <= {ENUMERATION_LIMIT}")
    code = int(_canonical_codes(_bit_vector(g)[None, :], g.n)[0]) if g.n >= 2 else 0
    return _graph_from_code(code, g.n)


def canonical_graph6(g: WeightedGraph) -> str:
    return write_graph6(canonical_form(g))


def enumerate_nonisomorphic(n: int) -> Iterator[WeightedGraph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Classes on ``n`` vertices are obtained by attaching a new vertex to every
    class on ``n - 1`` vertices with every possible neighbourhood, then
    deduplicating by canonical code. Output is sorted by code.
    """
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise UnsupportedOrderError(
            f"internal enumeration supports 1 <= n <= {ENUMERATION_LIMIT}; "
            "supply larger orders as a graph6 stream")
    for code in _class_codes(n):
        yield _graph_from_code(code, n)


@lru_cache(maxsize=None)
def _class_codes(n: int) -> tuple[int, ...]:
    if n <= 2:
        return (0,) if n == 1 else (0, 1)
    parents = _class_codes(n - 1)
    old_pairs = list(_pairs(n - 1))
    nb_old = len(old_pairs)
    # new pairs (i, n-1) come last in column-major order
    codes = set()
    for pcode in parents:
        pbits = [(pcode >> (nb_old - 1 - i)) & 1 for i in range(nb_old)]
        rows = np.array([pbits + [(nb >> i) & 1 for i in range(n - 1)] for nb in range(1 << (n - 1))],
                        dtype=np.int64)
        codes.update(int(c) for c in _canonical_codes(rows, n))
    return tuple(sorted(codes))


# ---------------------------------------------------------------------------
# Subgraphs and predicates
# ---------------------------------------------------------------------------

def induced_subgraph(g: WeightedGraph, subset: Iterable[int]) -> tuple[WeightedGraph, dict[int, int]]:
    """Subgraph induced by ``subset`` relabeled to ``0..|S|-1`` in sorted order.

    Returns the graph and the map from original to new labels.
    """
    verts = sorted(set(int(s) for s in subset))
    if not verts:
        raise ArgumentError("induced subgraph needs a nonempty vertex set")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise ArgumentError(f"vertex out of range 0..{g.n - 1}")
    relabel = {v: i for i, v in enumerate(verts)}
    edges = [(relabel[u], relabel[v], w) for (u, v), w in zip(g.edges, g.weights)
             if u in relabel and v in relabel]
    return WeightedGraph.from_edges(len(verts), edges), relabel


def _components(n: int, masks: list[int], alive: int) -> int:
    count, left = 0, alive
    while left:
        count += 1
        frontier = left & -left
        seen = frontier
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= masks[low.bit_length() - 1]
                frontier ^= low
            nxt &= alive & ~seen
            seen |= nxt
            frontier = nxt
        left &= ~seen
    return count


def has_perfect_matching(masks: list[int], alive: int) -> bool:
    """Perfect matching test on the vertex set ``alive`` (bitmask)."""

    @lru_cache(maxsize=None)
    def rec(s: int) -> bool:
        if s == 0:
            return True
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        cand = masks[v] & rest
        while cand:
            u = cand & -cand
            if rec(rest ^ u):
                return True
            cand ^= u
        return False

    if bin(alive).count("1") % 2:
        return False
    return rec(alive)


def classify(g: WeightedGraph) -> GraphPredicates:
    n = g.n
    masks = g.adjacency_masks()
    full = (1 << n) - 1
    connected = n <= 1 or _components(n, masks, full) == 1

    color = [-1] * n
    bipartite = True
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack and bipartite:
            u = stack.pop()
            for v in g.neighbors(u):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    bipartite = False
                    break

    triangle_free = not any(masks[u] & masks[v] for u, v in g.edges)

    if n >= 3:
        biconnected = connected and all(
            _components(n, masks, full & ~(1 << i)) == 1 for i in range(n))
    else:
        biconnected = connected

    factor_critical = n % 2 == 1 and all(
        has_perfect_matching(masks, full & ~(1 << i)) for i in range(n))

    return GraphPredicates(connected, bipartite, biconnected, factor_critical, triangle_free)
