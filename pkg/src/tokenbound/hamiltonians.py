"""Extremal QMC, XY and EPR energies from token-graph blocks.

Each Hamiltonian conserves Hamming weight, and the weight-k block is a
token-graph matrix: L(F_k) for QMC, Q(F_k) for EPR and W/2 - A(F_k) for XY.
Blocks k and n-k are isomorphic, so only k <= n/2 is diagonalised. The k=0
block is 1x1 with value 0 (QMC, EPR) or W/2 (XY).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import matching_polytope_membership, max_weight_matching
from .errors import ArgumentError, PreconditionError
from .graph_core import WeightedGraph, classify
from .spectra import MatrixKind, SpectralResult, assemble, extremal_eigs, per_edge_energies
from .token_graphs import build, check_size


class Problem(enum.Enum):
    QMC = "qmc"
    XY = "xy"
    EPR = "epr"

    @classmethod
    def parse(cls, text: str) -> "Problem":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ArgumentError(f"unknown problem {text!r}; expected qmc, xy or epr") from None


class Extreme(enum.Enum):
    MAX = "max"
    MIN = "min"


BLOCK_KIND = {Problem.QMC: MatrixKind.LAPLACIAN, Problem.EPR: MatrixKind.SIGNLESS_LAPLACIAN,
              Problem.XY: MatrixKind.ADJACENCY}


@dataclass(frozen=True)
class EnergyResult:
    value: float
    k_star: int
    eigenvector: np.ndarray
    per_edge: np.ndarray | None = None
    concurrence: np.ndarray | None = None


def block_spectrum(g: WeightedGraph, k: int, kind: MatrixKind, cache: dict | None = None) -> SpectralResult:
    """Extremal eigenpairs of kind(F_k(G)), memoised in ``cache`` when given."""
    if cache is not None and (k, kind) in cache:
        return cache[(k, kind)]
    res = extremal_eigs(assemble(build(g, k), kind))
    if cache is not None:
        cache[(k, kind)] = res
    return res


def _block_extremes(g: WeightedGraph, p: Problem, k: int, cache: dict | None = None):
    """(top, v_top, bottom, v_bottom) of the energy on the weight-k block."""
    if k == 0 or g.n < 2:
        e = g.total_weight / 2 if p is Problem.XY else 0.0
        one = np.ones(1)
        return e, one, e, one
    res = block_spectrum(g, k, BLOCK_KIND[p], cache)
    if p is Problem.XY:
        half = g.total_weight / 2
        return half - res.lambda_min, res.v_min, half - res.lambda_max, res.v_max
    return res.lambda_max, res.v_max, res.lambda_min, res.v_min


def block_energies(g: WeightedGraph, p: Problem, max_block: int | None = None) -> list[tuple[float, float]]:
    """(max, min) energy of each Hamming-weight block k = 0..max_block (default n//2)."""
    top = g.n // 2 if max_block is None else max_block
    return [(hi, lo) for hi, _, lo, _ in (_block_extremes(g, p, k) for k in range(top + 1))]


def extremal_energy(g: WeightedGraph, p: Problem, which: Extreme = Extreme.MAX,
                    per_edge: bool = False, max_block: int | None = None,
                    cache: dict | None = None) -> EnergyResult:
    """Largest or smallest eigenvalue of H(G) over the blocks k = 0..n//2.

    ``max_block`` restricts the blocks considered; it exists for exploring
    which block attains the extreme and defaults to the full range.
    Ties between blocks resolve to the smaller k. ``cache`` memoises block
    spectra across calls on the same graph.
    """
    if isinstance(which, str):
        which = Extreme(which.lower())
    half = g.n // 2
    top = half if max_block is None else max_block
    if not 0 <= top <= half:
        raise ArgumentError(f"max_block must lie in 0..{half}, got {max_block}")
    if top >= 1:
        check_size(g.n, top)
    best = None
    for k in range(top + 1):
        hi, v_hi, lo, v_lo = _block_extremes(g, p, k, cache)
        val, vec = (hi, v_hi) if which is Extreme.MAX else (lo, v_lo)
        tol = 1e-12 * max(1.0, abs(val))
        if best is None or (val > best[0] + tol if which is Extreme.MAX else val < best[0] - tol):
            best = (val, k, vec)
    value, k_star, vec = best
    if not per_edge:
        return EnergyResult(float(value), k_star, vec)
    x = edge_energies(g, p, k_star, vec)
    conc = concurrence(g, x) if p is Problem.QMC else None
    return EnergyResult(float(value), k_star, vec, x, conc)


def edge_energies(g: WeightedGraph, p: Problem, k: int, v) -> np.ndarray:
    """Per-edge energy <h_e> (weight included) of block vector ``v`` at Hamming weight k."""
    w = np.array(g.weights)
    if k == 0:
        return w / 2 if p is Problem.XY else np.zeros(g.m)
    x = per_edge_energies(g, k, BLOCK_KIND[p], v)
    return w / 2 - x if p is Problem.XY else x


def concurrence(g: WeightedGraph, x) -> np.ndarray:
    """c_e = max(0, x_e / w_e - 1) from weighted per-edge QMC energies x."""
    w = np.array(g.weights)
    return np.maximum(0.0, np.asarray(x) / w - 1.0)


def concurrence_sum(g: WeightedGraph, c) -> float:
    return float(np.dot(g.weights, c))


def concurrence_in_matching_polytope(g: WeightedGraph, c) -> bool:
    return matching_polytope_membership(g, np.asarray(c)) is None


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def closed_form_complete(n: int, p: Problem) -> float:
    """lambda_max of H(K_n)."""
    if n < 2:
        raise ArgumentError(f"complete-graph formulas need n >= 2, got {n}")
    even = n % 2 == 0
    if p is Problem.QMC:
        return (n * n + 2 * n) / 4 if even else (n * n + 2 * n - 3) / 4
    if p is Problem.EPR:
        return n * n / 2 if even else (n * n - 1) / 2
    return (n * n + n) / 4 if even else (n * n + n - 2) / 4


def johnson_adjacency_spectrum(n: int, k: int) -> list[float]:
    """Eigenvalues (k-i)(n-k-i) - i, i = 0..k, of the Johnson graph J(n,k) = F_k(K_n), descending."""
    if n < 2 or not 1 <= k <= n // 2:
        raise ArgumentError(f"need n >= 2 and 1 <= k <= n//2, got n={n}, k={k}")
    return sorted((float((k - i) * (n - k - i) - i) for i in range(k + 1)), reverse=True)


class StarTarget(enum.Enum):
    LAPLACIAN_OR_SIGNLESS = "LQ"
    ADJACENCY = "A"
    XY_MAX_ENERGY = "XY"


def star_bound(m: int, k: int | None, target: StarTarget) -> float:
    """Closed forms on the star S_m (m leaves)."""
    if m < 1:
        raise ArgumentError(f"star needs m >= 1 leaves, got {m}")
    if target is StarTarget.XY_MAX_ENERGY:
        return m / 2 + math.sqrt((m * m + 2 * m) / 4) if m % 2 == 0 else m + 0.5
    if k is None or not 1 <= k <= (m + 1) // 2:
        raise ArgumentError(f"k must lie in 1..{(m + 1) // 2}, got {k}")
    if target is StarTarget.LAPLACIAN_OR_SIGNLESS:
        return float(m + 1)
    return math.sqrt(k * (m + 1 - k))


def dicke_epr_energy(g: WeightedGraph) -> float:
    """EPR energy of the Dicke state at Hamming weight n//2."""
    n = g.n
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    if not classify(g).connected:
        raise PreconditionError("Dicke-state energy is stated for connected graphs")
    w = g.total_weight
    return w * n / (n - 1) if n % 2 == 0 else w * (n + 1) / n


def dicke_vector_energy(g: WeightedGraph, k: int | None = None) -> float:
    """<D|H^EPR|D> for the uniform vector on block k, evaluated numerically."""
    k = g.n // 2 if k is None else k
    q = assemble(build(g, k), MatrixKind.SIGNLESS_LAPLACIAN)
    v = np.full(q.shape[0], 1 / math.sqrt(q.shape[0]))
    return float(v @ q @ v)


def max_matching_weight(g: WeightedGraph, k: int | None = None) -> float:
    return max_weight_matching(g, k).weight
