"""Exact matchings and cuts, matching-polytope membership and odd ear decompositions.

All routines are exponential in n and meant for desk-scale graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ArgumentError, PreconditionError, ResourceError
from .graph_core import WeightedGraph, classify

MAX_EXACT_N = 24
MAX_ODD_SET_N = 16
SLACK = 1e-9


@dataclass(frozen=True)
class Matching:
    edges: tuple[int, ...]
    weight: float

    def incidence(self, m: int) -> np.ndarray:
        x = np.zeros(m)
        x[list(self.edges)] = 1.0
        return x


@dataclass(frozen=True)
class CutResult:
    side: tuple[int, ...]
    weight: float


# ---------------------------------------------------------------------------
# Matchings
# ---------------------------------------------------------------------------

def _better(a: tuple[float, tuple], b: tuple[float, tuple]) -> bool:
    """True when candidate ``a`` beats ``b``: heavier, or equal weight and lexicographically smaller."""
    tol = 1e-12 * max(1.0, abs(a[0]), abs(b[0]))
    if a[0] > b[0] + tol:
        return True
    if a[0] < b[0] - tol:
        return False
    return a[1] < b[1]


def max_weight_matching(g: WeightedGraph, max_edges: int | None = None) -> Matching:
    """Maximum-weight matching with at most ``max_edges`` edges.

    Uses a DP over vertex bitmasks keyed on the lowest remaining vertex,
    which either stays unmatched or pairs with a remaining neighbour.
    """
    if g.n > MAX_EXACT_N:
        raise ResourceError(f"exact matching supports n <= {MAX_EXACT_N}, got {g.n}")
    k = g.n // 2 if max_edges is None else min(int(max_edges), g.n // 2)
    if k < 0:
        raise ArgumentError(f"max_edges must be non-negative, got {max_edges}")
    nbrs: list[list[tuple[int, int, float]]] = [[] for _ in range(g.n)]
    for idx, ((u, v), w) in enumerate(zip(g.edges, g.weights)):
        nbrs[u].append((v, idx, w))
    memo: dict[tuple[int, int], tuple[float, tuple]] = {}

    def best(mask: int, left: int) -> tuple[float, tuple]:
        if mask == 0 or left == 0:
            return (0.0, ())
        key = (mask, left)
        if key in memo:
            return memo[key]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        top = best(rest, left)
        for u, idx, w in nbrs[v]:
            if rest >> u & 1:
                sub = best(rest & ~(1 << u), left - 1)
                cand = (sub[0] + w, tuple(sorted(sub[1] + (idx,))))
                if _better(cand, top):
                    top = cand
        memo[key] = top
        return top

    weight, edges = best((1 << g.n) - 1, k)
    return Matching(edges, float(sum(g.weights[i] for i in edges)))


def matching_number(g: WeightedGraph, max_edges: int | None = None) -> int:
    """Maximum matching cardinality (weights ignored)."""
    return len(max_weight_matching(g.unweighted(), max_edges).edges)


def all_matchings(g: WeightedGraph) -> Iterator[tuple[int, ...]]:
    """Every matching as a sorted tuple of edge indices, including the empty one."""

    def rec(start: int, used: int, chosen: tuple[int, ...]):
        yield chosen
        for i in range(start, g.m):
            u, v = g.edges[i]
            bit = (1 << u) | (1 << v)
            if not used & bit:
                yield from rec(i + 1, used | bit, chosen + (i,))

    yield from rec(0, 0, ())


# ---------------------------------------------------------------------------
# MaxCut
# ---------------------------------------------------------------------------

def max_cut(g: WeightedGraph) -> CutResult:
    """Exact maximum cut by enumerating every side S that contains vertex 0."""
    n = g.n
    if n > MAX_EXACT_N:
        raise ResourceError(f"exact MaxCut supports n <= {MAX_EXACT_N}, got {n}")
    if n <= 1:
        return CutResult((0,) if n == 1 else (), 0.0)
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    # bit 0 of the full side mask is vertex 0, always present
    side = (masks << 1) | 1
    value = np.zeros(len(masks))
    for (u, v), w in zip(g.edges, g.weights):
        value += w * (((side >> u) ^ (side >> v)) & 1)
    top = value.max()
    ties = side[value >= top - 1e-10 * abs(top)]
    best = min(tuple(i for i in range(n) if s >> i & 1) for s in ties.tolist())
    mask = sum(1 << i for i in best)
    weight = sum(w for (u, v), w in zip(g.edges, g.weights) if (mask >> u & 1) != (mask >> v & 1))
    return CutResult(best, float(weight))


def cut_value(g: WeightedGraph, side: Sequence[int]) -> float:
    s = set(side)
    return float(sum(w for (u, v), w in zip(g.edges, g.weights) if (u in s) != (v in s)))


# ---------------------------------------------------------------------------
# Matching polytope
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolytopeViolation:
    """First violated inequality of the (cardinality-capped) matching polytope.

    ``kind`` is ``"nonnegative"`` (``where`` = edge index), ``"star"``
    (vertex), ``"cardinality"`` (None) or ``"odd_set"`` (sorted vertex tuple).
    """

    kind: str
    where: object
    lhs: float
    rhs: float


def _edge_masks(g: WeightedGraph) -> np.ndarray:
    return np.array([(1 << u) | (1 << v) for u, v in g.edges], dtype=np.int64)


def odd_subsets(n: int) -> Iterator[tuple[int, ...]]:
    """Odd vertex subsets of size >= 3, by size then lexicographically."""
    for size in range(3, n + 1, 2):
        yield from itertools.combinations(range(n), size)


def odd_set_sums(g: WeightedGraph, z: np.ndarray, size: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """All subsets of the given size with the sum of z over their induced edges."""
    subsets = list(itertools.combinations(range(g.n), size))
    if not subsets or g.m == 0:
        return subsets, np.zeros(len(subsets))
    smask = np.array([sum(1 << i for i in s) for s in subsets], dtype=np.int64)
    em = _edge_masks(g)
    inside = (smask[:, None] & em[None, :]) == em[None, :]
    return subsets, inside @ z


def matching_polytope_membership(g: WeightedGraph, z, k_cap: int | None = None,
                                 slack: float = SLACK) -> PolytopeViolation | None:
    """Return the first violated constraint, or ``None`` when z is feasible."""
    z = np.asarray(z, dtype=float)
    if z.shape != (g.m,):
        raise ArgumentError(f"z has shape {z.shape}, expected ({g.m},)")
    if not np.all(np.isfinite(z)):
        raise ArgumentError("z has non-finite entries")
    for i, x in enumerate(z):
        if x < -slack:
            return PolytopeViolation("nonnegative", i, 0.0, float(x))
    star = np.zeros(g.n)
    for (u, v), x in zip(g.edges, z):
        star[u] += x
        star[v] += x
    for i in range(g.n):
        if star[i] > 1.0 + slack:
            return PolytopeViolation("star", i, float(star[i]), 1.0)
    if k_cap is not None and z.sum() > k_cap + slack:
        return PolytopeViolation("cardinality", None, float(z.sum()), float(k_cap))
    if g.n > MAX_ODD_SET_N:
        raise ResourceError(f"odd-set enumeration supports n <= {MAX_ODD_SET_N}, got {g.n}")
    for size in range(3, g.n + 1, 2):
        subsets, sums = odd_set_sums(g, z, size)
        rhs = (size - 1) / 2
        bad = np.nonzero(sums > rhs + slack)[0]
        if len(bad):
            return PolytopeViolation("odd_set", subsets[bad[0]], float(sums[bad[0]]), rhs)
    return None


# ---------------------------------------------------------------------------
# Ear decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ear:
    """A path ``v0 ... vL`` or, when closed, a cycle with ``v0 == vL``."""

    vertices: tuple[int, ...]
    closed: bool

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.vertices, self.vertices[1:])]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class EarDecomposition:
    ears: tuple[Ear, ...]

    @property
    def closed_count(self) -> int:
        return sum(e.closed for e in self.ears)


def ear_problems(g: WeightedGraph, dec: EarDecomposition, open_variant: bool = True) -> list[str]:
    """Structural problems with ``dec``; an empty list means every invariant holds."""
    problems = []
    if not dec.ears:
        return ["no ears"]
    seen: dict[tuple[int, int], int] = {}
    covered: set[int] = set()
    for idx, ear in enumerate(dec.ears):
        vs = ear.vertices
        if ear.length < 1:
            problems.append(f"ear {idx} has no edges")
            continue
        if ear.length % 2 == 0:
            problems.append(f"ear {idx} has even length {ear.length}")
        for e in ear.edges:
            if not g.has_edge(*e):
                problems.append(f"ear {idx} uses non-edge {e}")
            if e in seen:
                problems.append(f"edge {e} in ears {seen[e]} and {idx}")
            seen[e] = idx
        if ear.closed != (vs[0] == vs[-1]):
            problems.append(f"ear {idx} closed flag disagrees with its endpoints")
        body = vs[:-1] if ear.closed else vs
        if len(set(body)) != len(body):
            problems.append(f"ear {idx} repeats a vertex")
        if idx == 0:
            if not ear.closed or ear.length < 3:
                problems.append("first ear is not a cycle")
        else:
            if open_variant and ear.closed:
                problems.append(f"ear {idx} is closed")
            if vs[0] not in covered or vs[-1] not in covered:
                problems.append(f"ear {idx} endpoints {ear.ends} not on earlier ears")
            if any(v in covered for v in ear.internal):
                problems.append(f"ear {idx} has an internal vertex on earlier ears")
        covered.update(vs)
    if len(seen) != g.m:
        missing = sorted(set(g.edges) - set(seen))
        problems.append(f"edges not covered: {missing}")
    if covered != set(range(g.n)):
        problems.append(f"vertices not covered: {sorted(set(range(g.n)) - covered)}")
    return problems


def _odd_cycles(g: WeightedGraph) -> Iterator[tuple[int, ...]]:
    """Odd cycles as closed vertex sequences, longest first, each listed once."""
    adj = [sorted(g.neighbors(i)) for i in range(g.n)]
    top = g.n if g.n % 2 else g.n - 1
    for length in range(top, 2, -2):
        for s in range(g.n):
            stack = [(s,)]
            while stack:
                path = stack.pop()
                u = path[-1]
                if len(path) == length:
                    if s in adj[u] and path[1] < path[-1]:
                        yield path + (s,)
                    continue
                stack.extend(path + (v,) for v in reversed(adj[u]) if v > s and v not in path)


def _candidate_ears(adj: list[list[int]], covered: set[int]) -> list[Ear]:
    """Odd paths/cycles whose ends lie in ``covered`` and interiors outside it."""
    found: dict[tuple, Ear] = {}
    for s in sorted(covered):
        stack = [(s, (s,))]
        while stack:
            u, path = stack.pop()
            for v in adj[u]:
                if v in covered:
                    if len(path) == 1:
                        continue  # chords are handled separately
                    seq = path + (v,)
                    if (len(seq) - 1) % 2 == 0:
                        continue
                    if v == s:
                        if len(seq) < 4:
                            continue
                        key = min(seq[1:-1], seq[-2:0:-1])
                        found.setdefault(("c", s) + key, Ear(seq if seq[1:-1] == key else seq[::-1], True))
                    elif s < v:
                        found.setdefault(("o",) + seq, Ear(seq, False))
                    else:
                        found.setdefault(("o",) + seq[::-1], Ear(seq[::-1], False))
                elif v not in path:
                    stack.append((v, path + (v,)))
    return sorted(found.values(), key=lambda e: (e.length, e.vertices))


def odd_ear_decomposition(g: WeightedGraph, prefer_open: bool = True) -> EarDecomposition:
    """An odd ear decomposition (ears may be closed), built greedily with backtracking.

    Tries odd cycles as the first ear, longest first, since a long cycle
    can still be a dead end. After each ear every available chord is added
    as a single-edge ear, then the shortest odd ear reaching new vertices.
    ``prefer_open=False`` tries closed ears first, which is useful for
    exercising the open-ear rewrite.
    """
    adj = [sorted(g.neighbors(i)) for i in range(g.n)]
    every = set(g.edges)

    def extend(ears: list[Ear], used: set, covered: set[int], budget: list[int]) -> list[Ear] | None:
        ears, used = list(ears), set(used)
        for e in sorted(every - used):
            if e[0] in covered and e[1] in covered:
                ears.append(Ear(e, False))
                used.add(e)
        if used == every:
            return ears
        cands = _candidate_ears(adj, covered)
        cands.sort(key=lambda e: (e.closed if prefer_open else not e.closed, e.length, e.vertices))
        for ear in cands:
            budget[0] -= 1
            if budget[0] < 0:
                return None
            out = extend(ears + [ear], used | set(ear.edges), covered | set(ear.vertices), budget)
            if out is not None:
                return out
        return None

    budget, out, tried = [100_000], None, 0
    for first in _odd_cycles(g):
        tried += 1
        start = Ear(first, True)
        out = extend([start], set(start.edges), set(first), budget)
        if out is not None or budget[0] < 0:
            break
    if not tried:
        raise PreconditionError("graph has no odd cycle")
    if out is None:
        raise PreconditionError("no odd ear decomposition found; graph is probably not factor-critical")
    return EarDecomposition(tuple(out))


def _rewrite_last_closed(ears: list[Ear]) -> list[Ear]:
    """One pass of the closed-to-open rewrite on the last closed ear after the first."""
    s = max(i for i, e in enumerate(ears) if e.closed and i > 0)
    cyc = ears[s]
    hub = cyc.vertices[0]
    f_side = set().union(*(set(e.vertices) for e in ears[:s]))
    region = set(cyc.vertices) - {hub}

    region_ears, f_side_ears, link = [], [], None
    for j in range(s + 1, len(ears)):
        a, b = ears[j].ends
        in_r = (a in region, b in region)
        if any(in_r) and all(x in region or x == hub for x in (a, b)):
            region_ears.append(ears[j])
            region.update(ears[j].internal)
        elif a in f_side and b in f_side:
            f_side_ears.append(ears[j])
            f_side.update(ears[j].internal)
        else:
            link = j
            break
    if link is None:
        raise PreconditionError(f"vertex {hub} is a cut vertex; graph is not biconnected")

    o_f = ears[link]
    seq = o_f.vertices if o_f.vertices[0] not in region else o_f.vertices[::-1]
    path = list(seq)
    block = [cyc] + region_ears
    introduced = {}
    for pos, ear in enumerate(block):
        for v in ear.vertices[1:-1]:
            introduced.setdefault(v, pos)
    leftovers: dict[int, Ear] = {}
    cyc_set = set(cyc.vertices)
    t = path[-1]
    while t not in cyc_set:
        # earliest ear holding t is the one that introduced it
        pos = introduced[t]
        vs = block[pos].vertices
        i = vs.index(t)
        if i % 2 == 0:
            seg, rest = vs[i::-1], vs[i:]
        else:
            seg, rest = vs[i:], vs[i::-1]
        path.extend(seg[1:])
        leftovers[pos] = Ear(tuple(rest), False)
        t = seg[-1]

    tail = []
    for pos in range(1, len(block)):
        tail.append(leftovers.get(pos, block[pos]))
    if t == hub:
        # the walk came back to the hub without touching the cycle; keep the
        # cycle and retry with the enlarged prefix on the next pass
        head = [Ear(tuple(path), False), cyc]
    else:
        cv = cyc.vertices
        i = cv.index(t)
        if (len(cv) - 1 - i) % 2 == 0:
            arc, rest = cv[i:], cv[:i + 1]
        else:
            arc, rest = cv[i::-1], cv[i:]
        path.extend(arc[1:])
        head = [Ear(tuple(path), False), Ear(tuple(rest), False)]
    return ears[:s] + f_side_ears + head + tail + ears[link + 1:]


def open_ear_rewrite(g: WeightedGraph, dec: EarDecomposition) -> EarDecomposition:
    """Turn every closed ear after the first into open ears.

    For the last closed ear C (attached at u), take the first later ear
    linking C's side to the earlier part at v != u. Walk from v along it,
    then repeatedly along the even-length part of the ear that introduced
    the current vertex, until C is reached, and close off along the
    even arc of C to u. That walk is one odd open ear; the leftover arc of
    C and the untraversed parts of the visited ears stay odd and open.
    """
    ears = list(dec.ears)
    for _ in range(4 * g.n * max(1, len(ears))):
        if not any(e.closed for e in ears[1:]):
            return EarDecomposition(tuple(ears))
        ears = _rewrite_last_closed(ears)
    raise PreconditionError("open-ear rewrite did not converge")


def odd_open_ear_decomposition(g: WeightedGraph, prefer_open: bool = True) -> EarDecomposition:
    """Odd open-ear decomposition of a biconnected factor-critical graph."""
    if g.n < 3:
        raise PreconditionError(f"graph must have at least 3 vertices, got {g.n}")
    pred = classify(g)
    failed = [name for name in ("factor_critical", "biconnected") if not getattr(pred, name)]
    if failed:
        raise PreconditionError(f"graph is not {' and '.join(failed).replace('_', '-')}")
    dec = open_ear_rewrite(g, odd_ear_decomposition(g, prefer_open=prefer_open))
    problems = ear_problems(g, dec, open_variant=True)
    if problems:
        raise AssertionError("open ear decomposition failed its own check: " + "; ".join(problems))
    return dec
