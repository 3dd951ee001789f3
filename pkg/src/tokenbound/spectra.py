"""Laplacian, signless Laplacian and adjacency spectra of token graphs."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalError, ResourceError
from .graph_core import WeightedGraph
from .token_graphs import TokenGraph, build, size_cap

DEDUP_TOL = 1e-6


class MatrixKind(enum.Enum):
    LAPLACIAN = "L"
    SIGNLESS_LAPLACIAN = "Q"
    ADJACENCY = "A"

    @classmethod
    def parse(cls, text: str) -> "MatrixKind":
        key = text.strip().upper()
        aliases = {"L": cls.LAPLACIAN, "LAPLACIAN": cls.LAPLACIAN,
                   "Q": cls.SIGNLESS_LAPLACIAN, "SIGNLESS": cls.SIGNLESS_LAPLACIAN,
                   "A": cls.ADJACENCY, "ADJACENCY": cls.ADJACENCY}
        if key not in aliases:
            raise ArgumentError(f"unknown matrix kind {text!r}; expected L, Q or A")
        return aliases[key]


@dataclass(frozen=True)
class SpectralResult:
    lambda_max: float
    lambda_min: float
    v_max: np.ndarray
    v_min: np.ndarray
    dimension: int
    residual: float


def assemble(tg: TokenGraph, kind: MatrixKind) -> np.ndarray:
    dim = tg.num_vertices
    if dim > size_cap():
        raise ResourceError(f"matrix dimension {dim} exceeds the size cap {size_cap()}")
    a = np.zeros((dim, dim))
    np.add.at(a, (tg.edge_a, tg.edge_b), tg.edge_w)
    a += a.T
    if kind is MatrixKind.ADJACENCY:
        return a
    deg = np.diag(a.sum(axis=1))
    return deg - a if kind is MatrixKind.LAPLACIAN else deg + a


def token_matrix(g: WeightedGraph, k: int, kind: MatrixKind) -> np.ndarray:
    return assemble(build(g, k), kind)


def _prepare(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ArgumentError(f"expected a nonempty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ArgumentError("matrix has non-finite entries")
    return 0.5 * (m + m.T)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # deterministic sign: the entry of largest magnitude is positive
    pivot = np.argmax(np.abs(v) > np.abs(v).max() - 1e-12)
    return -v if v[pivot] < 0 else v


def extremal_eigs(m, tol: float = 1e-9) -> SpectralResult:
    m = _prepare(m)
    vals, vecs = np.linalg.eigh(m)
    if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(vecs))):
        raise NumericalError("eigensolver returned non-finite values")
    lo, hi = float(vals[0]), float(vals[-1])
    v_min, v_max = _fix_sign(vecs[:, 0]), _fix_sign(vecs[:, -1])
    residual = max(np.abs(m @ v_max - hi * v_max).max(), np.abs(m @ v_min - lo * v_min).max())
    if residual > max(tol, 1e-8 * max(1.0, abs(hi))):
        raise NumericalError(f"eigenpair residual {residual:.3g} above tolerance")
    return SpectralResult(hi, lo, v_max, v_min, m.shape[0], float(residual))


def eigenvalues(m) -> np.ndarray:
    return np.linalg.eigvalsh(_prepare(m))


def unique_spectrum(m, dedup_tol: float = DEDUP_TOL) -> list[float]:
    """Sorted distinct eigenvalues; runs of values closer than ``dedup_tol`` merge to their mean."""
    vals = eigenvalues(m)
    groups = [[vals[0]]]
    for x in vals[1:]:
        if x - groups[-1][-1] <= dedup_tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [float(np.mean(grp)) for grp in groups]


def per_edge_energies(g: WeightedGraph, k: int, kind: MatrixKind, v, tg: TokenGraph | None = None) -> np.ndarray:
    """x_e = v^T M(F_k(G_e)) v for every edge e, where G_e keeps only e (with its weight).

    The entries sum to v^T M(F_k(G)) v.
    """
    if tg is None:
        tg = build(g, k)
    v = np.asarray(v, dtype=float)
    if v.shape != (tg.num_vertices,):
        raise ArgumentError(f"vector has shape {v.shape}, expected ({tg.num_vertices},)")
    va, vb = v[tg.edge_a], v[tg.edge_b]
    if kind is MatrixKind.LAPLACIAN:
        contrib = tg.edge_w * (va - vb) ** 2
    elif kind is MatrixKind.SIGNLESS_LAPLACIAN:
        contrib = tg.edge_w * (va + vb) ** 2
    else:
        contrib = 2.0 * tg.edge_w * va * vb
    return np.bincount(tg.edge_src, weights=contrib, minlength=g.m)


def dump_matrix(m) -> str:
    m = np.asarray(m, dtype=float)
    return "\n".join(" ".join(f"{x:.12g}" for x in row) for row in m) + "\n"
