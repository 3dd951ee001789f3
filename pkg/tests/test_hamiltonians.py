import math

import numpy as np
import pytest

from oracles import pauli_extremes
from tokenbound.combinatorics import max_weight_matching
from tokenbound.errors import ArgumentError, PreconditionError
from tokenbound.graph_core import (WeightedGraph, classify, complete_bipartite_graph, complete_graph, cycle_graph,
                                   erdos_renyi, path_graph, star_graph)
from tokenbound.hamiltonians import (Extreme, Problem, StarTarget, block_energies, closed_form_complete,
                                     concurrence_in_matching_polytope, concurrence_sum, dicke_epr_energy,
                                     dicke_vector_energy, extremal_energy, johnson_adjacency_spectrum, star_bound)
from tokenbound.spectra import MatrixKind, token_matrix, unique_spectrum


def test_table_examples():
    assert extremal_energy(cycle_graph(5), Problem.QMC).value == pytest.approx(6.24, abs=0.01)
    assert extremal_energy(cycle_graph(5), Problem.EPR).value == pytest.approx(6.83, abs=0.01)


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("problem", list(Problem))
def test_energies_match_full_diagonalisation(seed, problem):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    weights = "uniform" if seed % 2 else "unit"
    g = erdos_renyi(n, float(rng.uniform(0.2, 1)), seed=seed, weights=weights)
    top, bottom = pauli_extremes(g, problem.value)
    assert extremal_energy(g, problem, Extreme.MAX).value == pytest.approx(top, abs=1e-8)
    assert extremal_energy(g, problem, Extreme.MIN).value == pytest.approx(bottom, abs=1e-8)


@pytest.mark.parametrize("n", range(3, 10))
def test_cycles_and_paths_match_full_diagonalisation(n):
    for g in (cycle_graph(n), path_graph(n)):
        for problem in Problem:
            top, bottom = pauli_extremes(g, problem.value)
            assert extremal_energy(g, problem).value == pytest.approx(top, abs=1e-8)
            assert extremal_energy(g, problem, "min").value == pytest.approx(bottom, abs=1e-8)


def test_per_edge_sums_and_ties():
    g = erdos_renyi(7, 0.6, seed=4, weights="uniform")
    for p in Problem:
        r = extremal_energy(g, p, per_edge=True)
        assert r.per_edge.sum() == pytest.approx(r.value)
        assert 0 <= r.k_star <= 3
    # empty graph: every block gives 0, the tie resolves to k = 0
    assert extremal_energy(WeightedGraph.from_edges(4, []), Problem.QMC).k_star == 0


def test_max_block_restricts():
    g = cycle_graph(6)
    full = block_energies(g, Problem.XY)
    assert len(full) == 4 and len(block_energies(g, Problem.XY, max_block=1)) == 2
    assert extremal_energy(g, Problem.XY, max_block=1).value == pytest.approx(max(full[0][0], full[1][0]))
    with pytest.raises(ArgumentError):
        extremal_energy(g, Problem.XY, max_block=4)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_graph_closed_forms(n):
    for p in Problem:
        assert extremal_energy(complete_graph(n), p).value == pytest.approx(closed_form_complete(n, p), abs=1e-6)


def test_closed_form_examples():
    assert closed_form_complete(4, Problem.QMC) == 6
    assert closed_form_complete(5, Problem.EPR) == 12
    assert closed_form_complete(4, Problem.XY) == 5
    with pytest.raises(ArgumentError):
        closed_form_complete(1, Problem.QMC)


def test_johnson_spectrum():
    assert johnson_adjacency_spectrum(4, 2) == [4, 0, -2]
    assert johnson_adjacency_spectrum(5, 1) == [4, -1]
    assert johnson_adjacency_spectrum(6, 3) == [9, 3, -1, -3]
    for n in range(2, 9):
        for k in range(1, n // 2 + 1):
            numeric = unique_spectrum(token_matrix(complete_graph(n), k, MatrixKind.ADJACENCY))
            assert numeric == pytest.approx(sorted(johnson_adjacency_spectrum(n, k)), abs=1e-6)
    with pytest.raises(ArgumentError):
        johnson_adjacency_spectrum(4, 3)


def test_star_bounds():
    assert star_bound(5, 2, StarTarget.LAPLACIAN_OR_SIGNLESS) == 6
    assert star_bound(4, 2, StarTarget.ADJACENCY) == pytest.approx(math.sqrt(6))
    assert star_bound(3, None, StarTarget.XY_MAX_ENERGY) == 3.5
    for m in range(1, 9):
        s = star_graph(m)
        for k in range(1, (m + 1) // 2 + 1):
            for kind in (MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN):
                top = unique_spectrum(token_matrix(s, k, kind))[-1]
                assert top == pytest.approx(star_bound(m, k, StarTarget.LAPLACIAN_OR_SIGNLESS), abs=1e-6)
            top = unique_spectrum(token_matrix(s, k, MatrixKind.ADJACENCY))[-1]
            assert top == pytest.approx(star_bound(m, k, StarTarget.ADJACENCY), abs=1e-6)
        assert extremal_energy(s, Problem.XY).value == pytest.approx(star_bound(m, None, StarTarget.XY_MAX_ENERGY),
                                                                      abs=1e-6)
    with pytest.raises(ArgumentError):
        star_bound(3, 3, StarTarget.ADJACENCY)


def test_dicke():
    assert dicke_epr_energy(cycle_graph(6)) == pytest.approx(7.2)
    assert dicke_epr_energy(path_graph(5)) == pytest.approx(4.8)
    assert dicke_epr_energy(complete_graph(2)) == pytest.approx(2)
    for g in (cycle_graph(6), path_graph(5), complete_graph(5), erdos_renyi(7, 0.7, seed=1)):
        if classify(g).connected:
            assert dicke_vector_energy(g) == pytest.approx(dicke_epr_energy(g))
    with pytest.raises(PreconditionError):
        dicke_epr_energy(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]))


def test_qmc_epr_sandwich(all_small_graphs):
    for g in all_small_graphs:
        if g.n < 2:
            continue
        q = extremal_energy(g, Problem.QMC).value
        e = extremal_energy(g, Problem.EPR).value
        assert e / 2 - 1e-9 <= q <= e + 1e-9
        if classify(g).bipartite:
            assert q == pytest.approx(e, abs=1e-6)


def test_weighted_bipartite_equivalence():
    rng = np.random.default_rng(3)
    for a, b in [(2, 3), (3, 3), (2, 5)]:
        g = complete_bipartite_graph(a, b).with_weights(rng.uniform(0.1, 2, a * b))
        assert extremal_energy(g, Problem.QMC).value == pytest.approx(extremal_energy(g, Problem.EPR).value)


def test_concurrence_bound_and_polytope(all_small_graphs):
    for g in all_small_graphs[::2]:
        if g.m == 0:
            continue
        r = extremal_energy(g, Problem.QMC, per_edge=True)
        assert np.all(r.concurrence >= 0)
        assert concurrence_sum(g, r.concurrence) <= max_weight_matching(g).weight + 1e-6
        assert concurrence_in_matching_polytope(g, r.concurrence)


def test_weighted_concurrence():
    for seed in range(20):
        g = erdos_renyi(7, 0.6, seed=seed, weights="uniform")
        if g.m == 0:
            continue
        r = extremal_energy(g, Problem.QMC, per_edge=True)
        assert concurrence_sum(g, r.concurrence) <= max_weight_matching(g).weight + 1e-6
