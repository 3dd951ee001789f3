
import numpy as np
import pytest

from oracles import brute_matchings, brute_max_cut, brute_max_matching, lp_in_matching_polytope
from tokenbound.combinatorics import (Ear, EarDecomposition, all_matchings, cut_value, ear_problems, matching_number,
                                      matching_polytope_membership, max_cut, max_weight_matching,
                                      odd_ear_decomposition, odd_open_ear_decomposition, open_ear_rewrite)
from tokenbound.errors import ArgumentError, PreconditionError, ResourceError
from tokenbound.graph_core import (WeightedGraph, classify, complete_graph, cycle_graph, erdos_renyi, path_graph,
                                   star_graph)


def test_matching_examples():
    m = max_weight_matching(path_graph(4))
    assert m.weight == 2 and m.edges == (0, 2)
    assert max_weight_matching(cycle_graph(5), 1).weight == 1
    assert max_weight_matching(star_graph(5)).weight == 1


@pytest.mark.parametrize("seed", range(25))
def test_matching_against_bruteforce(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    g = erdos_renyi(n, float(rng.random()), seed=seed)
    for cap in (None, 1, 2):
        res = max_weight_matching(g, cap)
        assert res.weight == pytest.approx(brute_max_matching(g, cap))
        ends = [v for i in res.edges for v in g.edges[i]]
        assert len(ends) == len(set(ends))
        assert res.weight == pytest.approx(sum(g.weights[i] for i in res.edges))
    assert sorted(all_matchings(g)) == sorted(brute_matchings(g))


def test_matching_number_and_size_cap():
    assert matching_number(complete_graph(7)) == 3
    with pytest.raises(ResourceError):
        max_weight_matching(path_graph(30))


def test_cut_examples():
    assert max_cut(cycle_graph(5)).weight == 4
    assert max_cut(complete_graph(4)).weight == 4
    assert max_cut(cycle_graph(6)).weight == 6


@pytest.mark.parametrize("seed", range(20))
def test_cut_against_bruteforce(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(1, 10))
    g = erdos_renyi(n, float(rng.random()), seed=seed)
    res = max_cut(g)
    assert res.weight == pytest.approx(brute_max_cut(g))
    assert cut_value(g, res.side) == pytest.approx(res.weight)


def test_polytope_examples():
    tri = complete_graph(3)
    v = matching_polytope_membership(tri, [0.5, 0.5, 0.5])
    assert v.kind == "odd_set" and v.where == (0, 1, 2) and v.lhs == pytest.approx(1.5) and v.rhs == 1
    assert matching_polytope_membership(tri, [0.5, 0.5, 0]) is None
    assert matching_polytope_membership(cycle_graph(7), np.zeros(7)) is None
    assert matching_polytope_membership(tri, [-0.1, 0, 0]).kind == "nonnegative"
    assert matching_polytope_membership(path_graph(3), [0.7, 0.7]).kind == "star"
    assert matching_polytope_membership(path_graph(4), [0.5, 0.5, 0.5], k_cap=1).kind == "cardinality"
    with pytest.raises(ArgumentError):
        matching_polytope_membership(tri, [0.1, 0.2])


@pytest.mark.parametrize("seed", range(30))
def test_polytope_against_lp(seed):
    rng = np.random.default_rng(200 + seed)
    n = int(rng.integers(3, 8))
    g = erdos_renyi(n, float(rng.uniform(0.3, 1)), seed=seed)
    if g.m == 0:
        return
    for _ in range(10):
        z = rng.dirichlet(np.ones(g.m)) * rng.uniform(0.5, 2.5)
        ours = matching_polytope_membership(g, z) is None
        assert ours == lp_in_matching_polytope(g, z)


# ---------------------------------------------------------------------------
# Ear decompositions
# ---------------------------------------------------------------------------

def test_ear_examples():
    dec = odd_open_ear_decomposition(cycle_graph(5))
    assert len(dec.ears) == 1 and dec.ears[0].closed and dec.ears[0].length == 5
    chord = WeightedGraph.from_edges(5, list(cycle_graph(5).edges) + [(0, 2)])
    dec = odd_open_ear_decomposition(chord)
    assert len(dec.ears) == 2 and dec.ears[1] == Ear((0, 2), False)
    k5 = complete_graph(5)
    dec = odd_open_ear_decomposition(k5)
    assert dec.closed_count == 1 and sum(e.length for e in dec.ears) == 10
    assert ear_problems(k5, dec) == []


def test_ear_preconditions():
    with pytest.raises(PreconditionError, match="factor-critical"):
        odd_open_ear_decomposition(cycle_graph(6))
    # two triangles sharing a vertex: factor-critical but not biconnected
    bowtie = WeightedGraph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert classify(bowtie).factor_critical
    with pytest.raises(PreconditionError, match="biconnected"):
        odd_open_ear_decomposition(bowtie)
    with pytest.raises(PreconditionError):
        odd_open_ear_decomposition(path_graph(2))


def test_ear_checker_catches_problems():
    c5 = cycle_graph(5)
    assert ear_problems(c5, EarDecomposition((Ear((0, 1, 2, 3, 4, 0), True),))) == []
    even = EarDecomposition((Ear((0, 1, 2, 3, 0), True),))
    assert ear_problems(cycle_graph(4), even)
    partial = EarDecomposition((Ear((0, 1, 2), False),))
    assert ear_problems(c5, partial)
    two_closed = WeightedGraph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    dec = EarDecomposition((Ear((0, 1, 2, 0), True), Ear((2, 3, 4, 2), True)))
    assert ear_problems(two_closed, dec, open_variant=False) == []
    assert ear_problems(two_closed, dec, open_variant=True)


def _fc_biconnected(graphs):
    return [g for g in graphs if classify(g).biconnected and classify(g).factor_critical]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_open_ears_on_all_small(n, graphs_upto7):
    targets = _fc_biconnected(graphs_upto7[n])
    assert targets
    rewrites = 0
    for g in targets:
        for prefer_open in (True, False):
            raw = odd_ear_decomposition(g, prefer_open=prefer_open)
            assert ear_problems(g, raw, open_variant=False) == []
            rewrites += raw.closed_count > 1
            dec = open_ear_rewrite(g, raw)
            assert dec.closed_count == 1 and dec.ears[0].closed
            assert ear_problems(g, dec) == []
    if n == 7:
        assert rewrites > 0


def test_open_ears_order9_sample(fc9):
    assert len(fc9) == 400
    for g in fc9:
        for prefer_open in (True, False):
            dec = odd_open_ear_decomposition(g, prefer_open=prefer_open)
            assert dec.closed_count == 1
            assert ear_problems(g, dec) == []


def test_first_cycle_dead_end():
    # the longest odd cycle (length 7) cannot be extended by odd ears here
    g = WeightedGraph.from_edges(9, [(0, 2), (0, 7), (1, 4), (1, 7), (2, 3), (2, 4), (3, 6), (3, 8), (4, 5),
                                     (4, 7), (5, 6), (5, 7), (6, 7), (7, 8)])
    dec = odd_open_ear_decomposition(g)
    assert ear_problems(g, dec) == []


def test_multi_closed_rewrite():
    # triangle 0-1-2 with closed triangles hung at 1 and 2, joined by the edge 4-6
    edges = [(0, 1), (1, 2), (0, 2), (1, 3), (3, 4), (1, 4), (2, 5), (5, 6), (2, 6), (4, 6)]
    g = WeightedGraph.from_edges(7, edges)
    assert classify(g).biconnected and classify(g).factor_critical
    raw = EarDecomposition((Ear((0, 1, 2, 0), True), Ear((1, 3, 4, 1), True), Ear((2, 5, 6, 2), True),
                            Ear((4, 6), False)))
    assert ear_problems(g, raw, open_variant=False) == []
    dec = open_ear_rewrite(g, raw)
    assert ear_problems(g, dec) == [] and dec.closed_count == 1
