"""Energies of the matching / cut product states, ratio certificates and ratio constants."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .combinatorics import CutResult, Matching, max_cut, max_weight_matching
from .errors import ArgumentError
from .graph_core import WeightedGraph
from .hamiltonians import Extreme, Problem, extremal_energy

NU2 = 0.9349
NU3 = 0.9563
GAMMA_STAR = (math.sqrt(5) - 1) / 2
THETA_STAR = 0.5 * math.asin(GAMMA_STAR)

# ---------------------------------------------------------------------------
# Two-qubit oracle
# ---------------------------------------------------------------------------

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def term_matrix(p: Problem) -> np.ndarray:
    """4x4 edge term h_ij written out in Pauli form."""
    ii, xx, yy, zz = (np.kron(a, a) for a in (I2, X, Y, Z))
    if p is Problem.QMC:
        return 0.5 * (ii - xx - yy - zz)
    if p is Problem.XY:
        return 0.5 * (ii - xx - yy)
    return 0.5 * (ii + xx - yy + zz)


def _ket(*amps) -> np.ndarray:
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)


def _proj(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


class TwoQubitState(enum.Enum):
    SINGLET = "singlet"
    EPR_PAIR = "epr"
    MIXED_MIXED = "mixed"
    SINGLET_HALF_MIXED = "singlet_half_mixed"
    CUT_Z = "cut_z"
    UNCUT_Z = "uncut_z"
    CUT_X = "cut_x"
    UNCUT_X = "uncut_x"


def reduced_qubit(rho: np.ndarray, keep: int) -> np.ndarray:
    """Single-qubit marginal of a two-qubit density matrix."""
    r = rho.reshape(2, 2, 2, 2)
    return np.einsum("ajbj->ab", r) if keep == 0 else np.einsum("iaib->ab", r)


def state_matrix(state: TwoQubitState) -> np.ndarray:
    plus, minus = _ket(1, 1), _ket(1, -1)
    zero, one = _ket(1, 0), _ket(0, 1)
    if state is TwoQubitState.SINGLET:
        return _proj(_ket(0, 1, -1, 0))
    if state is TwoQubitState.EPR_PAIR:
        return _proj(_ket(1, 0, 0, 1))
    if state is TwoQubitState.MIXED_MIXED:
        return np.eye(4, dtype=complex) / 4
    if state is TwoQubitState.SINGLET_HALF_MIXED:
        # one qubit of a singlet next to a maximally mixed qubit
        half = reduced_qubit(_proj(_ket(0, 1, -1, 0)), 0)
        return np.kron(half, I2 / 2)
    if state is TwoQubitState.CUT_Z:
        return _proj(np.kron(zero, one))
    if state is TwoQubitState.UNCUT_Z:
        return _proj(np.kron(zero, zero))
    if state is TwoQubitState.CUT_X:
        return _proj(np.kron(plus, minus))
    return _proj(np.kron(plus, plus))


def two_qubit_term_energy(p: Problem, state) -> float:
    """tr(h rho) for a named state or an explicit 4x4 density matrix."""
    rho = state_matrix(state) if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)
    return float(np.real(np.trace(term_matrix(p) @ rho)))


def epr_pair_state(theta: float) -> np.ndarray:
    """exp(i theta P P)|00><00|exp(-i theta P P) with P = (X - Y)/sqrt(2)."""
    pp = np.kron((X - Y) / math.sqrt(2), (X - Y) / math.sqrt(2))
    u = expm(1j * theta * pp)
    v = u @ np.array([1, 0, 0, 0], dtype=complex)
    return _proj(v)


def epr_edge_states(theta: float) -> dict[str, np.ndarray]:
    """Reduced two-qubit states on each edge type of the matching state."""
    pair = epr_pair_state(theta)
    single = reduced_qubit(pair, 0)
    zero = np.array([[1, 0], [0, 0]], dtype=complex)
    return {"matched": pair, "to_unmatched": np.kron(single, zero),
            "across": np.kron(single, single), "unmatched": np.kron(zero, zero)}


# ---------------------------------------------------------------------------
# Algorithm states
# ---------------------------------------------------------------------------

class StateKind(enum.Enum):
    EPR_MATCHING = "epr_matching"
    CUT_PRODUCT = "cut_product"
    MATCHING_SINGLETS = "matching_singlets"
    RANDOMIZED_PRODUCT = "randomized_product"


@dataclass(frozen=True)
class AlgorithmState:
    kind: StateKind
    theta: float | None = None
    nu: float | None = None
    matching: Matching | None = None
    cut: CutResult | None = None

    def __post_init__(self):
        if self.kind is StateKind.EPR_MATCHING and not 0 <= (self.theta or 0) <= math.pi / 4:
            raise ArgumentError(f"theta must lie in [0, pi/4], got {self.theta}")
        if self.kind is StateKind.RANDOMIZED_PRODUCT and self.nu not in (NU2, NU3):
            raise ArgumentError(f"nu must be {NU2} or {NU3}, got {self.nu}")


def epr_edge_energies(theta: float) -> dict[str, float]:
    """Per-unit-weight EPR energy by edge type, in closed form."""
    s, c = math.sin(2 * theta), math.cos(2 * theta)
    return {"matched": (2 + 2 * s) / 2, "to_unmatched": (1 + c) / 2,
            "across": (1 + c * c) / 2, "unmatched": 1.0}


def edge_types(g: WeightedGraph, matching: Matching) -> list[str]:
    partner = {}
    for idx in matching.edges:
        u, v = g.edges[idx]
        partner[u], partner[v] = v, u
    out = []
    for idx, (u, v) in enumerate(g.edges):
        if idx in matching.edges:
            out.append("matched")
        elif u in partner and v in partner:
            out.append("across")
        elif u in partner or v in partner:
            out.append("to_unmatched")
        else:
            out.append("unmatched")
    return out


def epr_matching_state_energy(g: WeightedGraph, theta: float = THETA_STAR,
                              matching: Matching | None = None) -> tuple[float, np.ndarray]:
    """Energy of the rotated-matching EPR state and its per-edge (weighted) breakdown.

    Both endpoints of an unmatched edge with no matched endpoint sit in |0>,
    which only happens when ``matching`` is not maximal.
    """
    if not 0 <= theta <= math.pi / 4:
        raise ArgumentError(f"theta must lie in [0, pi/4], got {theta}")
    matching = max_weight_matching(g) if matching is None else matching
    table = epr_edge_energies(theta)
    per_edge = np.array([w * table[t] for w, t in zip(g.weights, edge_types(g, matching))])
    return float(per_edge.sum()), per_edge


def product_state_energies(g: WeightedGraph, p: Problem) -> dict[str, float]:
    """Energies of the max-cut product state and the max-matching singlet state."""
    if p is Problem.EPR:
        raise ArgumentError("EPR uses epr_matching_state_energy")
    c = max_cut(g).weight
    m = max_weight_matching(g).weight
    w = g.total_weight
    matching_state = m + w / 2 if p is Problem.XY else (3 * m + w) / 2
    return {"cut_state": c, "matching_state": matching_state}


def randomized_product_energy(g: WeightedGraph, nu: float) -> float:
    """Expected energy of the randomized product rounding, taken as nu * C(G)."""
    if nu not in (NU2, NU3):
        raise ArgumentError(f"nu must be {NU2} or {NU3}, got {nu}")
    return nu * max_cut(g).weight


# ---------------------------------------------------------------------------
# Ratio certificates
# ---------------------------------------------------------------------------

class BoundKind(enum.Enum):
    MATCHING_BASED = "matching"
    CUT_BASED = "cut"
    COMBINED = "combined"


@dataclass(frozen=True)
class RatioCertificate:
    problem: Problem
    alg_energy: float
    upper_bound: float
    bound_kind: BoundKind
    ratio: float
    true_energy: float | None = None
    true_ratio: float | None = None


def upper_bounds(g: WeightedGraph, p: Problem) -> dict[BoundKind, float]:
    w = g.total_weight
    m = max_weight_matching(g).weight
    if p is Problem.EPR:
        return {BoundKind.MATCHING_BASED: w + m}
    c = max_cut(g).weight
    if p is Problem.QMC:
        return {BoundKind.MATCHING_BASED: w + m, BoundKind.CUT_BASED: 3 * c - w}
    return {BoundKind.MATCHING_BASED: w + m / 2, BoundKind.CUT_BASED: 2 * c - w / 2,
            BoundKind.COMBINED: (w + c + m) / 2}


def certified_ratio(g: WeightedGraph, p: Problem, compute_true: bool = False) -> RatioCertificate:
    if g.m == 0:
        raise ArgumentError("ratio is undefined on a graph without edges")
    if p is Problem.EPR:
        alg = epr_matching_state_energy(g)[0]
    else:
        alg = max(product_state_energies(g, p).values())
    bounds = upper_bounds(g, p)
    kind = min(bounds, key=lambda k: (bounds[k], list(BoundKind).index(k)))
    bound = bounds[kind]
    true_e = true_r = None
    if compute_true:
        true_e = extremal_energy(g, p, Extreme.MAX).value
        true_r = alg / true_e
    return RatioCertificate(p, alg, bound, kind, alg / bound, true_e, true_r)


# ---------------------------------------------------------------------------
# Worst-case constants
# ---------------------------------------------------------------------------

class Variant(enum.Enum):
    EXACT = "exact"
    EFFICIENT = "efficient"
    CUT_BOUND = "cut_bound"
    CUT_BOUND_EFFICIENT = "cut_bound_efficient"


@dataclass(frozen=True)
class RatioConstant:
    ratio: float
    c_star: float
    m_star: float


def ratio_function(p: Problem, variant: Variant):
    """Worst-case ratio as a function of normalised cut c and matching m."""
    if p is Problem.EPR:
        raise ArgumentError("the EPR constant is (1+sqrt5)/4 and has no (c, m) optimisation")
    efficient = variant in (Variant.EFFICIENT, Variant.CUT_BOUND_EFFICIENT)
    cut_bound = variant in (Variant.CUT_BOUND, Variant.CUT_BOUND_EFFICIENT)
    if p is Problem.QMC and cut_bound:
        raise ArgumentError("QMC has no cut-bound variant")
    nu = (NU2 if p is Problem.XY else NU3) if efficient else 1.0

    if p is Problem.XY:
        def f(c, m):
            den = np.minimum(2 * c - 0.5, 1 + m / 2)
            if cut_bound:
                den = np.minimum(den, (1 + c + m) / 2)
            return np.maximum(nu * c, m + 0.5) / den
    else:
        def f(c, m):
            return np.maximum(nu * c, (3 * m + 1) / 2) / np.minimum(3 * c - 1, 1 + m)
    return f


def _region_grid(m_lo, m_hi, t_lo, t_hi, steps):
    m = np.linspace(m_lo, m_hi, steps)
    t = np.linspace(t_lo, t_hi, steps)
    mm, tt = np.meshgrid(m, t, indexing="ij")
    cc = (mm + 1) / 2 + tt * (1 - (mm + 1) / 2)
    return mm, tt, cc


def worst_case_constants(p: Problem, variant: Variant = Variant.EXACT, step: float = 1e-3,
                         refine_to: float = 1e-6, offset: float = 0.0) -> RatioConstant:
    """Minimise the ratio over 0 <= m <= 1, (m+1)/2 <= c <= 1.

    The triangle is mapped to the unit square by c = (m+1)/2 + t (1 - (m+1)/2).
    A grid with the given step is followed by repeated zooms around the best
    point until the spacing drops below ``refine_to``. ``offset`` shifts the
    coarse grid origin (as a fraction of a step).
    """
    f = ratio_function(p, variant)
    n = int(round(1 / step)) + 1
    shift = offset * step
    lo_m, hi_m = min(1.0, max(0.0, shift)), 1.0
    mm, tt, cc = _region_grid(lo_m, hi_m, lo_m, hi_m, n - (1 if shift else 0))
    vals = f(cc, mm)
    i = np.unravel_index(np.argmin(vals), vals.shape)
    m0, t0, h = mm[i], tt[i], step
    while h > refine_to:
        mm, tt, cc = _region_grid(max(0.0, m0 - 2 * h), min(1.0, m0 + 2 * h),
                                  max(0.0, t0 - 2 * h), min(1.0, t0 + 2 * h), 41)
        vals = f(cc, mm)
        i = np.unravel_index(np.argmin(vals), vals.shape)
        m0, t0 = mm[i], tt[i]
        h /= 10
    c0 = (m0 + 1) / 2 + t0 * (1 - (m0 + 1) / 2)
    return RatioConstant(float(f(c0, m0)), float(c0), float(m0))


def epr_ratio_constant() -> float:
    return (1 + math.sqrt(5)) / 4
