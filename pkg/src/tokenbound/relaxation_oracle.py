"""Separation oracle for per-edge energy variables g in [0, 2]^E.

Edges with g_e > 1 form the subgraph H, and z_e = g_e - 1 on H must lie in
the matching polytope of H. A violated star or odd-set inequality on z is
lifted to a linear constraint on g that every matching-realisable energy
vector satisfies.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .combinatorics import MAX_ODD_SET_N, all_matchings, matching_number, max_weight_matching
from .errors import ArgumentError, PreconditionError, ResourceError
from .graph_core import WeightedGraph

SLACK = 1e-9


@dataclass(frozen=True)
class CandidatePoint:
    g: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        if g.ndim != 1 or not np.all(np.isfinite(g)):
            raise ArgumentError("candidate point must be a finite vector")
        if np.any(g < -SLACK) or np.any(g > 2 + SLACK):
            raise PreconditionError("candidate entries must lie in [0, 2]")
        object.__setattr__(self, "g", g)


class ConstraintKind(enum.Enum):
    STAR = "star"
    ODD_SET = "odd_set"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class Constraint:
    """sum over ``support`` of coeffs * g <= rhs; ``coeffs`` is None for unit coefficients."""

    kind: ConstraintKind
    where: object
    support: tuple[int, ...]
    rhs: float
    lhs: float
    coeffs: tuple[float, ...] | None = None

    def evaluate(self, g) -> float:
        g = np.asarray(g, dtype=float)
        a = np.ones(len(self.support)) if self.coeffs is None else np.array(self.coeffs)
        return float(a @ g[list(self.support)])


@dataclass(frozen=True)
class OracleOutcome:
    feasible: bool
    constraint: Constraint | None = None


def _as_point(g: WeightedGraph, pt) -> np.ndarray:
    if not isinstance(pt, CandidatePoint):
        pt = CandidatePoint(np.asarray(pt, dtype=float))
    if pt.g.shape != (g.m,):
        raise ArgumentError(f"candidate has {pt.g.shape[0]} entries, graph has {g.m} edges")
    return pt.g


def separate(g: WeightedGraph, pt) -> OracleOutcome:
    """Feasible, or the first violated star then odd-set constraint."""
    x = _as_point(g, pt)
    if g.n > MAX_ODD_SET_N:
        raise ResourceError(f"odd-set enumeration supports n <= {MAX_ODD_SET_N}, got {g.n}")
    f = [i for i in range(g.m) if x[i] > 1.0]
    z = {i: x[i] - 1.0 for i in f}

    for v in range(g.n):
        star = [i for i in f if v in g.edges[i]]
        if sum(z[i] for i in star) > 1.0 + SLACK:
            c = Constraint(ConstraintKind.STAR, v, tuple(star), 1.0 + len(star), float(x[star].sum()))
            return OracleOutcome(False, c)

    for size in range(3, g.n + 1, 2):
        for s in itertools.combinations(range(g.n), size):
            members = set(s)
            inside = [i for i in f if g.edges[i][0] in members and g.edges[i][1] in members]
            if sum(z[i] for i in inside) > (size - 1) / 2 + SLACK:
                h_s = WeightedGraph.from_edges(g.n, [g.edges[i] for i in inside])
                mu = matching_number(h_s)
                c = Constraint(ConstraintKind.ODD_SET, s, tuple(inside), float(mu + len(inside)),
                               float(x[inside].sum()))
                return OracleOutcome(False, c)
    return OracleOutcome(True)


def separate_weighted(g: WeightedGraph, pt) -> OracleOutcome:
    """Single-constraint check sum_F w g <= M_w(H) + W(H) on H = {e : g_e > 1}."""
    x = _as_point(g, pt)
    f = [i for i in range(g.m) if x[i] > 1.0]
    if not f:
        return OracleOutcome(True)
    w = np.array([g.weights[i] for i in f])
    h = WeightedGraph.from_edges(g.n, [g.edges[i] for i in f], w)
    rhs = max_weight_matching(h).weight + float(w.sum())
    lhs = float(w @ x[f])
    if lhs > rhs + SLACK:
        return OracleOutcome(False, Constraint(ConstraintKind.WEIGHTED, None, tuple(f), rhs, lhs, tuple(w)))
    return OracleOutcome(True)


def audit_constraint(g: WeightedGraph, outcome: OracleOutcome, max_n: int = 10) -> bool:
    """Check the returned constraint against g = mu + 1 for every matching mu of G."""
    if outcome.feasible or outcome.constraint is None:
        raise ArgumentError("audit needs a violated outcome")
    if g.n > max_n:
        raise ResourceError(f"matching enumeration for audits supports n <= {max_n}")
    c = outcome.constraint
    for mu in all_matchings(g):
        vec = np.ones(g.m)
        vec[list(mu)] += 1.0
        if c.evaluate(vec) > c.rhs + SLACK:
            return False
    return True
