import json

import numpy as np
import pytest

from tokenbound import conjectures as cj
from tokenbound.combinatorics import max_cut
from tokenbound.errors import ConjectureViolation, ParseError, PreconditionError
from tokenbound.graph_core import complete_graph, cycle_graph, erdos_renyi, write_graph6
from tokenbound.spectra import MatrixKind, token_matrix, unique_spectrum

C = cj.ConjectureId


def _by_k(reports):
    return {r.k: r for r in reports}


def test_examples():
    r = _by_k(cj.check(cycle_graph(5), C.L_MAX))[2]
    assert r.passed and r.rhs == 7 and r.lhs == pytest.approx(6.24, abs=0.01)
    r = _by_k(cj.check(complete_graph(4), C.Q_MAX))[2]
    assert r.passed and r.lhs == pytest.approx(8) and r.rhs == 8 and abs(r.margin) < 1e-9


def test_report_semantics():
    r = cj.ConjectureReport(C.L_MAX, "x", 1, 1.0 + 5e-8, 1.0)
    assert r.passed
    assert not cj.ConjectureReport(C.L_MAX, "x", 1, 1.0 + 2e-7, 1.0).passed


def test_parse_ids():
    assert cj.parse_ids("core") == cj.GROUPS["core"]
    assert cj.parse_ids("qmax, LMax") == (C.L_MAX, C.Q_MAX)
    assert set(cj.parse_ids("all")) == set(C)
    with pytest.raises(ValueError):
        cj.parse_ids("LMin")


def test_unweighted_only_guard():
    g = erdos_renyi(5, 1.0, seed=1)
    with pytest.raises(PreconditionError):
        cj.check(g, C.L_MAX)
    ids = [c.conjecture for c in cj.check_all(g, cj.GROUPS["all"], skip_inapplicable=True)]
    assert C.L_MAX not in ids and C.L_MAX_WEIGHTED in ids


def test_graph_ids():
    g = cycle_graph(5)
    assert cj.graph_id(g) == cj.graph_id(type(g).from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]))
    d1 = cj.counterexample_registry()[0].graph
    assert cj.graph_id(d1) == write_graph6(d1)
    w = erdos_renyi(5, 0.8, seed=2)
    assert cj.graph_id(w).startswith("w:") and cj.graph_id(w) == cj.graph_id(erdos_renyi(5, 0.8, seed=2))


def test_registry_d1():
    d1 = cj.counterexample_registry()[0]
    assert (d1.name, d1.graph.n, d1.graph.m) == ("D1", 8, 10)
    a3 = unique_spectrum(token_matrix(d1.graph, 3, MatrixKind.ADJACENCY))[0]
    a4 = unique_spectrum(token_matrix(d1.graph, 4, MatrixKind.ADJACENCY))[0]
    assert a3 == pytest.approx(-4.472, abs=1e-3)
    assert a4 == pytest.approx(-4.470, abs=1e-3)
    fails = [r for r in cj.check(d1.graph, C.A_MIN_MONOTONIC_REFUTED) if not r.passed]
    assert [r.k for r in fails] == [3]


def test_registry_d2():
    d2 = cj.counterexample_registry()[1]
    g = d2.graph
    assert (g.n, g.m, g.total_weight, max_cut(g).weight) == (10, 20, 20, 16)
    reps = _by_k(cj.check(g, C.L_CUT_BOUND_REFUTED))
    assert [k for k, r in reps.items() if not r.passed] == [5]
    assert reps[5].lhs == pytest.approx(23.062, abs=0.01) and reps[5].rhs == 23
    lmax = _by_k(cj.check(g, C.L_MAX))[5]
    assert lmax.passed and lmax.rhs == 25


def test_registry_batch():
    rep = cj.batch_verify(cj.counterexample_registry(), cj.GROUPS["all"])
    assert [(r.graph_id, r.conjecture) for r in rep.violations] == [("D1", C.A_MIN_MONOTONIC_REFUTED),
                                                                   ("D2", C.L_CUT_BOUND_REFUTED)]
    assert rep.unexpected == []
    assert {v["expected"] for v in rep.as_dict()["violations"]} == {True}


def test_exhaustive_n6(graphs_upto7):
    graphs = [g for n in range(1, 7) for g in graphs_upto7[n]]
    rep = cj.batch_verify(graphs, cj.GROUPS["core"])
    assert rep.total_graphs == 208 and rep.violations == []
    rep = cj.batch_verify(graphs, cj.GROUPS["refuted"])
    assert rep.violations == []


def test_batch_deterministic_across_jobs(graphs_upto7):
    graphs = graphs_upto7[5] + list(cj.weighted_suite(6, 12, seed=3))
    ids = cj.parse_ids("all")
    one = cj.batch_verify(graphs, ids, jobs=1, emit_all=True)
    three = cj.batch_verify(graphs, ids, jobs=3, emit_all=True)
    assert json.dumps(one.as_dict()) == json.dumps(three.as_dict())
    assert one.reports == three.reports


def test_batch_parse_errors_are_counted():
    items = list(cj.graph6_source(["Bw", "Bx", "C~"]))
    rep = cj.batch_verify(items, cj.GROUPS["core"])
    assert rep.total_graphs == 2 and len(rep.parse_errors) == 1
    assert isinstance(items[1], ParseError)


def test_strict_mode(monkeypatch):
    monkeypatch.setitem(cj.EVALUATORS, C.L_MAX, lambda ctx: [(1, 10.0, 1.0)])
    rep = cj.batch_verify([cycle_graph(5)], [C.L_MAX])
    assert len(rep.unexpected) == 1
    with pytest.raises(ConjectureViolation) as info:
        cj.batch_verify([cycle_graph(5)], [C.L_MAX], strict=True)
    assert info.value.report.conjecture is C.L_MAX
    with pytest.raises(ConjectureViolation):
        cj.check(cycle_graph(5), C.L_MAX, strict=True)
    # expected failures on registry graphs never trigger strict mode
    cj.batch_verify(cj.counterexample_registry(), cj.GROUPS["refuted"], strict=True)


def test_weighted_suite():
    a = list(cj.weighted_suite(6, 8, seed=1))
    assert a == list(cj.weighted_suite(6, 8, seed=1))
    assert a != list(cj.weighted_suite(6, 8, seed=2))
    assert all(g.n == 6 and all(w > 0 for w in g.weights) for g in a)
    assert a[3].m == 15 and a[7].m == 15
    assert any(0 < g.m < 15 for g in a)


def test_weighted_bounds_small_suite():
    graphs = [g for n in range(3, 8) for g in cj.weighted_suite(n, 60, seed=0)]
    rep = cj.batch_verify(graphs, cj.GROUPS["weighted"])
    assert rep.violations == []
    assert rep.min_margin > -1e-7


def test_margin_of_tight_bound():
    # XY maximum bound W + M/2 is attained by K_2: 1.5 = 1 + 1/2
    r = cj.check(complete_graph(2), C.XY_MAX_BOUND)[0]
    assert r.margin == pytest.approx(0, abs=1e-12)
    assert np.isfinite(r.lhs)
