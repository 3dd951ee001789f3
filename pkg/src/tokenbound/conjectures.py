"""Spectral conjectures and bounds as checkable inequalities lhs <= rhs.

Every check is phrased so that it passes when ``lhs <= rhs + PASS_TOL``;
inequalities of the form ``x >= b`` are reported as ``lhs = b, rhs = x``.
"""

from __future__ import annotations

import enum
import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .combinatorics import max_cut, max_weight_matching
from .errors import ConjectureViolation, ParseError, PreconditionError
from .graph_core import ENUMERATION_LIMIT, WeightedGraph, canonical_graph6, erdos_renyi, read_graph6_stream, write_edgelist, write_graph6
from .hamiltonians import Extreme, Problem, block_spectrum, concurrence, edge_energies, extremal_energy
from .spectra import MatrixKind

PASS_TOL = 1e-7


class ConjectureId(enum.Enum):
    L_MAX = "LMax"
    Q_MAX = "QMax"
    A_MAX = "AMax"
    A_MIN = "AMin"
    Q_MONOTONIC = "QMonotonic"
    A_MONOTONIC = "AMonotonic"
    L_MAX_WEIGHTED = "LMaxWeighted"
    Q_MAX_WEIGHTED = "QMaxWeighted"
    A_MAX_WEIGHTED = "AMaxWeighted"
    A_MIN_WEIGHTED = "AMinWeighted"
    QMC_WM = "QmcWM"
    EPR_WM = "EprWM"
    XY_MAX_BOUND = "XyMaxBound"
    XY_MIN_BOUND = "XyMinBound"
    A_CUT_BOUND = "ACutBound"
    L_CUT_BOUND_REFUTED = "LCutBound_refuted"
    CONCURRENCE_BOUND = "ConcurrenceBound"
    A_MIN_MONOTONIC_REFUTED = "AMinMonotonic_refuted"


C = ConjectureId
UNWEIGHTED_ONLY = frozenset({C.L_MAX, C.Q_MAX, C.A_MAX, C.A_MIN})
REFUTED = frozenset({C.L_CUT_BOUND_REFUTED, C.A_MIN_MONOTONIC_REFUTED})
GROUPS = {
    "core": (C.L_MAX, C.Q_MAX, C.A_MAX, C.A_MIN, C.Q_MONOTONIC, C.A_MONOTONIC),
    "weighted": (C.L_MAX_WEIGHTED, C.Q_MAX_WEIGHTED, C.A_MAX_WEIGHTED, C.A_MIN_WEIGHTED, C.QMC_WM,
                 C.EPR_WM, C.XY_MAX_BOUND, C.XY_MIN_BOUND, C.A_CUT_BOUND, C.CONCURRENCE_BOUND),
    "refuted": (C.L_CUT_BOUND_REFUTED, C.A_MIN_MONOTONIC_REFUTED),
    "all": tuple(ConjectureId),
}


def parse_ids(text: str) -> tuple[ConjectureId, ...]:
    """Comma-separated conjecture ids and/or group names, in canonical order."""
    chosen = set()
    by_name = {c.value.lower(): c for c in ConjectureId}
    for part in text.split(","):
        key = part.strip().lower()
        if not key:
            continue
        if key in GROUPS:
            chosen.update(GROUPS[key])
        elif key in by_name:
            chosen.add(by_name[key])
        else:
            raise ValueError(f"unknown conjecture or group {part.strip()!r}")
    return tuple(c for c in ConjectureId if c in chosen)


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: ConjectureId
    graph_id: str
    k: int | None
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + PASS_TOL

    def as_dict(self) -> dict:
        return {"graph": self.graph_id, "conjecture": self.conjecture.value, "k": self.k,
                "lhs": self.lhs, "rhs": self.rhs}


def graph_id(g: WeightedGraph) -> str:
    """Canonical graph6 (n <= 7) or plain graph6 for unweighted graphs, a content hash otherwise."""
    if g.is_unweighted:
        return canonical_graph6(g) if g.n <= ENUMERATION_LIMIT else write_graph6(g)
    return "w:" + hashlib.sha256(write_edgelist(g).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: WeightedGraph
    expected_failures: frozenset = frozenset()


class _Context:
    """Per-graph memo of the spectral and combinatorial quantities the checks share."""

    def __init__(self, g: WeightedGraph):
        self.g = g
        self.spectra: dict = {}
        self._matching: dict = {}
        self._cut = None
        self._energy: dict = {}

    def spec(self, k: int, kind: MatrixKind):
        return block_spectrum(self.g, k, kind, self.spectra)

    def big_m(self, k: int | None = None) -> float:
        if k not in self._matching:
            self._matching[k] = max_weight_matching(self.g, k).weight
        return self._matching[k]

    def cut(self) -> float:
        if self._cut is None:
            self._cut = max_cut(self.g).weight
        return self._cut

    def energy(self, p: Problem, which: Extreme):
        key = (p, which)
        if key not in self._energy:
            self._energy[key] = extremal_energy(self.g, p, which, cache=self.spectra)
        return self._energy[key]


def _ks(g: WeightedGraph) -> range:
    return range(1, g.n // 2 + 1)


def _pairs(g: WeightedGraph) -> range:
    return range(1, g.n // 2)


L_, Q_, A_ = MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN, MatrixKind.ADJACENCY


def _concurrence_check(ctx: _Context):
    g = ctx.g
    e = ctx.energy(Problem.QMC, Extreme.MAX)
    x = edge_energies(g, Problem.QMC, e.k_star, e.eigenvector)
    c = concurrence(g, x)
    return [(None, float(np.dot(g.weights, c)), ctx.big_m())]


# each evaluator returns a list of (k, lhs, rhs)
EVALUATORS: dict[ConjectureId, Callable[[_Context], list]] = {
    C.L_MAX: lambda x: [(k, x.spec(k, L_).lambda_max, x.g.m + k) for k in _ks(x.g)],
    C.Q_MAX: lambda x: [(k, x.spec(k, Q_).lambda_max, x.g.m + k) for k in _ks(x.g)],
    C.A_MAX: lambda x: [(k, x.spec(k, A_).lambda_max, (x.g.m + k) / 2) for k in _ks(x.g)],
    C.A_MIN: lambda x: [(k, -(x.g.m + k) / 2, x.spec(k, A_).lambda_min) for k in _ks(x.g)],
    C.Q_MONOTONIC: lambda x: [(k, x.spec(k, Q_).lambda_max, x.spec(k + 1, Q_).lambda_max) for k in _pairs(x.g)],
    C.A_MONOTONIC: lambda x: [(k, x.spec(k, A_).lambda_max, x.spec(k + 1, A_).lambda_max) for k in _pairs(x.g)],
    C.L_MAX_WEIGHTED: lambda x: [(k, x.spec(k, L_).lambda_max, x.g.total_weight + x.big_m(k)) for k in _ks(x.g)],
    C.Q_MAX_WEIGHTED: lambda x: [(k, x.spec(k, Q_).lambda_max, x.g.total_weight + x.big_m(k)) for k in _ks(x.g)],
    C.A_MAX_WEIGHTED: lambda x: [(k, x.spec(k, A_).lambda_max, (x.g.total_weight + x.big_m(k)) / 2)
                                 for k in _ks(x.g)],
    C.A_MIN_WEIGHTED: lambda x: [(k, -(x.g.total_weight + x.big_m(k)) / 2, x.spec(k, A_).lambda_min)
                                 for k in _ks(x.g)],
    C.QMC_WM: lambda x: [(None, x.energy(Problem.QMC, Extreme.MAX).value, x.g.total_weight + x.big_m())],
    C.EPR_WM: lambda x: [(None, x.energy(Problem.EPR, Extreme.MAX).value, x.g.total_weight + x.big_m())],
    C.XY_MAX_BOUND: lambda x: [(None, x.energy(Problem.XY, Extreme.MAX).value, x.g.total_weight + x.big_m() / 2)],
    C.XY_MIN_BOUND: lambda x: [(None, -x.big_m() / 2, x.energy(Problem.XY, Extreme.MIN).value)],
    C.A_CUT_BOUND: lambda x: [(k, -(x.cut() + x.big_m(k)) / 2, x.spec(k, A_).lambda_min) for k in _ks(x.g)],
    C.L_CUT_BOUND_REFUTED: lambda x: [(k, x.spec(k, L_).lambda_max, (x.g.total_weight + x.cut()) / 2 + k)
                                      for k in _ks(x.g)],
    C.CONCURRENCE_BOUND: _concurrence_check,
    C.A_MIN_MONOTONIC_REFUTED: lambda x: [(k, x.spec(k + 1, A_).lambda_min, x.spec(k, A_).lambda_min)
                                          for k in _pairs(x.g)],
}


def check(g: WeightedGraph, c: ConjectureId, gid: str | None = None, strict: bool = False,
          _ctx: _Context | None = None) -> list[ConjectureReport]:
    """One report per applicable k (a single report with k=None for Hamiltonian-level bounds)."""
    if c in UNWEIGHTED_ONLY and not g.is_unweighted:
        raise PreconditionError(f"{c.value} is stated for unweighted graphs only")
    ctx = _ctx if _ctx is not None else _Context(g)
    gid = graph_id(g) if gid is None else gid
    reports = [ConjectureReport(c, gid, k, float(lhs), float(rhs)) for k, lhs, rhs in EVALUATORS[c](ctx)]
    if strict:
        for r in reports:
            if not r.passed:
                raise ConjectureViolation(r)
    return reports


def check_all(g: WeightedGraph, ids: Iterable[ConjectureId], gid: str | None = None,
              skip_inapplicable: bool = False) -> list[ConjectureReport]:
    ctx = _Context(g)
    gid = graph_id(g) if gid is None else gid
    out = []
    for c in ids:
        if skip_inapplicable and c in UNWEIGHTED_ONLY and not g.is_unweighted:
            continue
        out.extend(check(g, c, gid, _ctx=ctx))
    return out


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def counterexample_registry() -> list[NamedGraph]:
    """The two published counterexample graphs with the checks they are known to fail."""
    letters = "abcdefgh"
    d1_edges = ["ab", "bc", "cd", "df", "fa", "ae", "ef", "ed", "bh", "ag"]
    d1 = WeightedGraph.from_edges(8, [(letters.index(a), letters.index(b)) for a, b in d1_edges])
    d2 = WeightedGraph.from_edges(10, [
        (0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5), (1, 6), (1, 7), (2, 6), (2, 7),
        (2, 8), (2, 9), (3, 6), (3, 7), (3, 8), (3, 9), (4, 8), (4, 9), (5, 8), (5, 9)])
    return [
        NamedGraph("D1", d1, frozenset({C.A_MIN_MONOTONIC_REFUTED})),
        NamedGraph("D2", d2, frozenset({C.L_CUT_BOUND_REFUTED})),
    ]


# ---------------------------------------------------------------------------
# Batch verification
# ---------------------------------------------------------------------------

@dataclass
class AggregateReport:
    conjectures: tuple[ConjectureId, ...]
    total_graphs: int = 0
    total_checks: int = 0
    violations: list[ConjectureReport] = field(default_factory=list)
    expected: set = field(default_factory=set)
    min_margin: float | None = None
    wall_time: float = 0.0
    parse_errors: list[tuple[int, str]] = field(default_factory=list)
    reports: list[ConjectureReport] | None = None

    def is_expected(self, r: ConjectureReport) -> bool:
        return (r.graph_id, r.conjecture) in self.expected

    @property
    def unexpected(self) -> list[ConjectureReport]:
        return [r for r in self.violations if not self.is_expected(r)]

    def as_dict(self) -> dict:
        return {
            "conjectures": [c.value for c in self.conjectures],
            "graphs": self.total_graphs,
            "checks": self.total_checks,
            "violations": [dict(r.as_dict(), expected=self.is_expected(r)) for r in self.violations],
            "min_margin": self.min_margin,
            "parse_errors": [{"line": ln, "message": msg} for ln, msg in self.parse_errors],
        }


def graph6_source(lines: Iterable) -> Iterator[WeightedGraph | ParseError]:
    for _, item in read_graph6_stream(lines):
        yield item


def _work(item) -> tuple[str, list[ConjectureReport]]:
    gid, g, ids = item
    return gid, check_all(g, ids, gid, skip_inapplicable=True)


def _sort_key(r: ConjectureReport):
    return (r.graph_id, -1 if r.k is None else r.k, list(ConjectureId).index(r.conjecture))


def batch_verify(source: Iterable, ids: Iterable[ConjectureId], jobs: int = 1, emit_all: bool = False,
                 strict: bool = False, progress: Callable[[int], None] | None = None) -> AggregateReport:
    """Check every graph in ``source`` against ``ids``.

    ``source`` yields ``WeightedGraph``, ``NamedGraph`` or ``ParseError``
    items (the last are counted and skipped). Unweighted-only conjectures are
    skipped on weighted graphs. Output does not depend on ``jobs``.
    """
    ids = tuple(c for c in ConjectureId if c in set(ids))
    report = AggregateReport(conjectures=ids, reports=[] if emit_all else None)
    t0 = time.perf_counter()
    items = []
    for obj in source:
        if isinstance(obj, ParseError):
            report.parse_errors.append((obj.line or 0, str(obj)))
            continue
        if isinstance(obj, NamedGraph):
            gid, g = obj.name, obj.graph
            report.expected.update((gid, c) for c in obj.expected_failures)
        else:
            g = obj
            gid = graph_id(g)
        items.append((gid, g, ids))

    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_work, items, chunksize=max(1, len(items) // (8 * jobs))))
    else:
        results = []
        for i, item in enumerate(items):
            results.append(_work(item))
            if progress is not None:
                progress(i + 1)

    collected = []
    for gid, reps in results:
        report.total_graphs += 1
        report.total_checks += len(reps)
        for r in reps:
            if report.min_margin is None or r.margin < report.min_margin:
                report.min_margin = r.margin
            if not r.passed:
                collected.append(r)
        if emit_all:
            report.reports.extend(reps)
    report.violations = sorted(collected, key=_sort_key)
    if emit_all:
        report.reports.sort(key=_sort_key)
    report.wall_time = time.perf_counter() - t0
    if strict and report.unexpected:
        raise ConjectureViolation(report.unexpected[0])
    return report


# ---------------------------------------------------------------------------
# Random weighted suites
# ---------------------------------------------------------------------------

def weighted_suite(n: int, count: int, seed: int = 0) -> Iterator[WeightedGraph]:
    """Seeded weighted test graphs of order n.

    Three in four are Erdos-Renyi graphs with p ~ U(0,1) and weights on
    (0, 1]; every fourth is a complete graph with exponential (rate 1) weights.
    """
    for i in range(count):
        ss = np.random.SeedSequence([seed, n, i])
        sub = int(ss.generate_state(1)[0])
        if i % 4 == 3:
            yield erdos_renyi(n, 1.0, sub, weights="exponential", rate=1.0)
        else:
            p = float(np.random.default_rng(sub).random())
            yield erdos_renyi(n, p, sub + 1, weights="uniform")
