"""Command-line entry point: ``tokenbound <command> [options]``.

Data goes to stdout, progress and diagnostics to stderr. Exit status is 0
on success, 2 when a verification run finds an unexpected violation and 1
on operational errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from typing import Iterable

import numpy as np

from . import conjectures as cj
from .approx_algorithms import Variant, certified_ratio, epr_ratio_constant, worst_case_constants
from .combinatorics import odd_open_ear_decomposition
from .errors import ConjectureViolation, TokenboundError
from .graph_core import (ENUMERATION_LIMIT, WeightedGraph, cycle_graph, enumerate_nonisomorphic,
                         parse_edgelist, parse_family, parse_graph6, path_graph, read_graph6_stream)
from .hamiltonians import Extreme, Problem, extremal_energy
from .relaxation_oracle import separate, separate_weighted
from .spectra import MatrixKind, token_matrix, unique_spectrum

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

# Reference values for the path/cycle energy table, n = 2..13 (two decimals).
REFERENCE_TABLE = {
    "QMC C_n": [2.00, 3.00, 6.00, 6.24, 8.61, 9.21, 11.30, 12.09, 14.03, 14.94, 16.77, 17.76],
    "EPR C_n": [2.00, 4.00, 6.00, 6.83, 8.61, 9.63, 11.30, 12.42, 14.03, 15.20, 16.77, 17.98],
    "EPR P_n": [2.00, 3.00, 4.73, 5.86, 7.49, 8.67, 10.25, 11.47, 13.02, 14.26, 15.78, 17.05],
    "XY C_n": [0.50, 1.50, 4.00, 4.12, 6.46, 6.75, 8.83, 9.26, 11.16, 11.70, 13.46, 14.09],
    "-XY C_n": [-0.50, -1.50, 0.00, -0.50, 0.46, 0.10, 0.83, 0.56, 1.16, 0.96, 1.46, 1.31],
    "XY P_n": [0.50, 1.00, 3.12, 3.73, 5.55, 6.26, 7.91, 8.70, 10.24, 11.08, 12.56, 13.43],
}

# Reference ratio constants: (label, problem, variant, value)
REFERENCE_CONSTANTS = [
    ("QMC existence", Problem.QMC, Variant.EXACT, 0.625),
    ("QMC product-state efficient", Problem.QMC, Variant.EFFICIENT, 0.604),
    ("XY existence", Problem.XY, Variant.EXACT, 5 / 7),
    ("XY efficient", Problem.XY, Variant.EFFICIENT, 0.674),
    ("XY cut-bound existence", Problem.XY, Variant.CUT_BOUND, 0.75),
    ("XY cut-bound efficient", Problem.XY, Variant.CUT_BOUND_EFFICIENT, 0.712),
]


def table_graph(family: str, n: int) -> WeightedGraph:
    """C_n or P_n for the energy table; both read as the single edge at n = 2."""
    if family == "C" and n >= 3:
        return cycle_graph(n)
    return path_graph(n)


def table_value(row: str, n: int) -> float:
    problem, fam = row.split()
    g = table_graph(fam[0], n)
    if problem == "-XY":
        return -extremal_energy(g, Problem.XY, Extreme.MIN).value
    return extremal_energy(g, Problem.parse(problem), Extreme.MAX).value


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _orders(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise TokenboundError(f"--orders expects A..B, got {text!r}") from None
    if a < 1 or b < a:
        raise TokenboundError(f"bad order range {text!r}")
    return range(a, b + 1)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return fh.read()
    except OSError as exc:
        raise TokenboundError(f"cannot read {path}: {exc.strerror}") from None


def _single_graph(args) -> WeightedGraph:
    given = [x for x in (args.graph6, args.edgelist, args.family) if x]
    if len(given) != 1:
        raise TokenboundError("give exactly one of --graph6, --edgelist, --family")
    if args.family:
        return parse_family(args.family, seed=args.seed)
    if args.edgelist:
        return parse_edgelist(_read_text(args.edgelist))
    src = args.graph6
    if src == "-" or os.path.exists(src):
        for _, item in read_graph6_stream(_read_text(src).splitlines()):
            if isinstance(item, Exception):
                raise item
            return item
        raise TokenboundError(f"no graph6 records in {src}")
    return parse_graph6(src)


def _emit(obj, fmt: str, text_lines: Iterable[str] | None = None, csv_rows: list[list] | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows or [])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write("\n".join(text_lines or []) + "\n")


def _fmt(x) -> str:
    return "-" if x is None else f"{x:.6f}"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    sources = []
    weighted = args.weighted is not None
    if args.conjectures:
        ids = cj.parse_ids(args.conjectures)
    elif weighted:
        ids = cj.GROUPS["weighted"]
    elif args.registry and not (args.orders or args.graph6 or args.edgelist or args.family):
        ids = cj.GROUPS["all"]
    else:
        ids = cj.GROUPS["core"]
    if args.orders:
        orders = _orders(args.orders)
        if weighted:
            sources.append(itertools.chain.from_iterable(
                cj.weighted_suite(n, args.weighted, args.seed) for n in orders))
        else:
            if orders.stop - 1 > ENUMERATION_LIMIT:
                raise TokenboundError(f"internal enumeration stops at n = {ENUMERATION_LIMIT}; "
                                      "pass larger orders with --graph6")
            sources.append(itertools.chain.from_iterable(enumerate_nonisomorphic(n) for n in orders))
    elif weighted:
        raise TokenboundError("--weighted needs --orders")
    if args.graph6:
        sources.append(cj.graph6_source(_read_text(args.graph6).splitlines()))
    if args.edgelist:
        sources.append([parse_edgelist(_read_text(args.edgelist))])
    if args.family:
        sources.append([parse_family(args.family, seed=args.seed)])
    if args.registry:
        sources.append(cj.counterexample_registry())
    if not sources:
        raise TokenboundError("nothing to verify: give --orders, --graph6, --edgelist, --family or --registry")

    def tick(i: int) -> None:
        if i % 500 == 0:
            _progress(f"checked {i} graphs")

    try:
        rep = cj.batch_verify(itertools.chain(*sources), ids, jobs=args.jobs, emit_all=args.emit_all,
                              strict=args.mode == "strict", progress=tick)
    except ConjectureViolation as exc:
        r = exc.report
        _progress(f"strict mode: {exc}")
        _emit({"violation": r.as_dict()}, args.format if args.format != "csv" else "json")
        return EXIT_VIOLATION
    _progress(f"{rep.total_graphs} graphs, {rep.total_checks} checks, {len(rep.violations)} violations "
              f"({len(rep.unexpected)} unexpected) in {rep.wall_time:.1f}s")
    for ln, msg in rep.parse_errors:
        _progress(f"skipped graph6 record: {msg}")

    rows = [["graph", "conjecture", "k", "lhs", "rhs", "margin", "pass", "expected"]]
    listed = rep.reports if args.emit_all else rep.violations
    for r in listed:
        rows.append([r.graph_id, r.conjecture.value, "" if r.k is None else r.k, repr(r.lhs), repr(r.rhs),
                     repr(r.margin), int(r.passed), int(rep.is_expected(r))])
    text = [f"graphs: {rep.total_graphs}", f"checks: {rep.total_checks}",
            f"min margin: {_fmt(rep.min_margin)}", f"violations: {len(rep.violations)}"]
    for r in rep.violations:
        tag = "expected" if rep.is_expected(r) else "UNEXPECTED"
        text.append(f"  {r.graph_id} {r.conjecture.value} k={r.k} lhs={r.lhs:.6f} rhs={r.rhs:.6f} [{tag}]")
    payload = rep.as_dict()
    if args.emit_all:
        payload["reports"] = [r.as_dict() for r in rep.reports]
    _emit(payload, args.format, text, rows)
    return EXIT_VIOLATION if rep.unexpected else EXIT_OK


def cmd_table(args) -> int:
    top = min(args.max_n, 2 + len(REFERENCE_TABLE["QMC C_n"]) - 1)
    ns = list(range(2, top + 1))
    rows_out, text, csv_rows = [], [], [["row", "n", "computed", "reference", "delta"]]
    for row, ref in REFERENCE_TABLE.items():
        vals = [table_value(row, n) for n in ns]
        refs = ref[: len(ns)]
        deltas = [v - r for v, r in zip(vals, refs)]
        rows_out.append({"row": row, "n": ns, "computed": vals, "reference": refs, "delta": deltas})
        text.append(f"{row:8s} " + " ".join(f"{v:7.2f}" for v in vals))
        text.append(f"{'  ref':8s} " + " ".join(f"{r:7.2f}" for r in refs))
        text.append(f"{'  delta':8s} " + " ".join(f"{d:7.2f}" for d in deltas))
        csv_rows += [[row, n, repr(v), r, repr(d)] for n, v, r, d in zip(ns, vals, refs, deltas)]
    consts = []
    text.append("")
    text.append("ratio constants (computed / reference, argmin c, m)")
    for label, p, variant, ref in REFERENCE_CONSTANTS:
        res = worst_case_constants(p, variant)
        consts.append({"label": label, "ratio": res.ratio, "reference": ref, "c": res.c_star, "m": res.m_star})
        text.append(f"  {label:28s} {res.ratio:.4f} / {ref:.3f}  at c={res.c_star:.4f}, m={res.m_star:.4f}")
        csv_rows.append([label, "", repr(res.ratio), ref, repr(res.ratio - ref)])
    epr = epr_ratio_constant()
    consts.append({"label": "EPR", "ratio": epr, "reference": 0.809, "c": None, "m": None})
    text.append(f"  {'EPR':28s} {epr:.4f} / 0.809")
    header = "n        " + " ".join(f"{n:7d}" for n in ns)
    _emit({"table": rows_out, "constants": consts}, args.format, [header] + text, csv_rows)
    return EXIT_OK


def cmd_spectra(args) -> int:
    g = _single_graph(args)
    kinds = [MatrixKind.parse(args.kind)] if args.kind else list(MatrixKind)
    ks = [args.k] if args.k else list(range(1, g.n))
    out, text, rows = [], [], [["kind", "k", "eigenvalues"]]
    for kind in kinds:
        for k in ks:
            spec = unique_spectrum(token_matrix(g, k, kind))
            spec = [0.0 if abs(x) < 1e-9 else round(x, 9) for x in spec]
            out.append({"kind": kind.value, "k": k, "unique": spec})
            text.append(f"{kind.value}(F_{k}) : " + ", ".join(f"{x:.6g}" for x in spec))
            rows.append([kind.value, k, " ".join(repr(x) for x in spec)])
    _emit({"n": g.n, "m": g.m, "spectra": out}, args.format, text, rows)
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _single_graph(args)
    ids = cj.parse_ids(args.conjectures or "all")
    reps = cj.check_all(g, ids, skip_inapplicable=True)
    text = [f"{'conjecture':22s} {'k':>3s} {'lhs':>12s} {'rhs':>12s} {'margin':>10s}  pass"]
    rows = [["conjecture", "k", "lhs", "rhs", "margin", "pass"]]
    for r in reps:
        text.append(f"{r.conjecture.value:22s} {'-' if r.k is None else r.k:>3} {r.lhs:12.6f} {r.rhs:12.6f} "
                    f"{r.margin:10.6f}  {'yes' if r.passed else 'NO'}")
        rows.append([r.conjecture.value, "" if r.k is None else r.k, repr(r.lhs), repr(r.rhs), repr(r.margin),
                     int(r.passed)])
    _emit({"graph": reps[0].graph_id if reps else cj.graph_id(g),
           "checks": [dict(r.as_dict(), margin=r.margin, passed=r.passed) for r in reps]},
          args.format, text, rows)
    return EXIT_OK


def cmd_ratio(args) -> int:
    g = _single_graph(args)
    p = Problem.parse(args.problem)
    cert = certified_ratio(g, p, compute_true=args.true)
    obj = {"problem": p.value, "alg_energy": cert.alg_energy, "upper_bound": cert.upper_bound,
           "bound_kind": cert.bound_kind.value, "ratio": cert.ratio,
           "true_energy": cert.true_energy, "true_ratio": cert.true_ratio}
    text = [f"{k}: {v:.6f}" if isinstance(v, float) else f"{k}: {v}" for k, v in obj.items()]
    _emit(obj, args.format, text, [list(obj), list(obj.values())])
    return EXIT_OK


def cmd_separate(args) -> int:
    g = _single_graph(args)
    try:
        point = json.loads(_read_text(args.point))
        vec = np.asarray(point["g"], dtype=float)
    except (ValueError, KeyError, TypeError):
        raise TokenboundError('candidate point must be JSON of the form {"g": [...]}') from None
    out = (separate_weighted if args.fast else separate)(g, vec)
    obj = {"result": "feasible" if out.feasible else "violated"}
    if out.constraint is not None:
        c = out.constraint
        where = list(c.where) if isinstance(c.where, tuple) else c.where
        obj["constraint"] = {"kind": c.kind.value, "where": where, "support": list(c.support),
                             "lhs": c.lhs, "rhs": c.rhs}
    text = [obj["result"]]
    if out.constraint is not None:
        c = obj["constraint"]
        text.append(f"{c['kind']} {c['where']}: sum over edges {c['support']} of g = {c['lhs']:.6f} > {c['rhs']:.6f}")
    _emit(obj, args.format, text, [["result"], [obj["result"]]])
    return EXIT_OK


def cmd_ears(args) -> int:
    g = _single_graph(args)
    dec = odd_open_ear_decomposition(g)
    ears = [{"vertices": list(e.vertices), "closed": e.closed, "length": e.length} for e in dec.ears]
    text = [f"{'closed' if e['closed'] else 'open  '} len {e['length']}: " + "-".join(map(str, e["vertices"]))
            for e in ears]
    rows = [["index", "closed", "length", "vertices"]]
    rows += [[i, int(e["closed"]), e["length"], " ".join(map(str, e["vertices"]))] for i, e in enumerate(ears)]
    _emit({"ears": ears}, args.format, text, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tokenbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_inputs(p, verify=False):
        p.add_argument("--graph6", help="graph6 file, '-' for stdin" + ("" if verify else ", or a literal record"))
        p.add_argument("--edgelist", help="weighted edge-list file ('n m' then 'u v w' lines)")
        p.add_argument("--family", help="named family such as cycle:5, star:3, bipartite:2,3, er:6,0.5")
        p.add_argument("--seed", type=int, default=0, help="seed for random families and suites")

    def fmt(p, default):
        p.add_argument("--format", choices=["json", "csv", "text"], default=default)

    v = sub.add_parser("verify", help="check conjectures over graph sources")
    graph_inputs(v, verify=True)
    v.add_argument("--orders", help="order range A..B (internal enumeration, or the weighted suite)")
    v.add_argument("--weighted", type=int, metavar="COUNT", help="seeded weighted graphs per order instead of enumeration")
    v.add_argument("--registry", action="store_true", help="include the counterexample registry")
    v.add_argument("--conjectures", help="comma-separated ids or groups: core, weighted, refuted, all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--mode", choices=["report", "strict"], default="report")
    v.add_argument("--emit-all", action="store_true", help="list every check, not only violations")
    fmt(v, "json")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="recompute the path/cycle energy table and ratio constants")
    t.add_argument("--max-n", type=int, default=10)
    fmt(t, "text")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("spectra", help="unique token-graph spectra of one graph")
    graph_inputs(s)
    s.add_argument("--kind", help="L, Q or A (default: all)")
    s.add_argument("--k", type=int, help="token count (default: 1..n-1)")
    fmt(s, "text")
    s.set_defaults(func=cmd_spectra)

    b = sub.add_parser("bounds", help="conjecture lhs/rhs table for one graph")
    graph_inputs(b)
    b.add_argument("--conjectures")
    fmt(b, "text")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("ratio", help="certified approximation ratio for one graph")
    graph_inputs(r)
    r.add_argument("--problem", default="qmc")
    r.add_argument("--true", action="store_true", help="also compute the exact maximum energy")
    fmt(r, "text")
    r.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("separate", help="run the separation oracle on a candidate point")
    graph_inputs(sp)
    sp.add_argument("--point", required=True, help='JSON file (or -) holding {"g": [...]}')
    sp.add_argument("--fast", action="store_true", help="single weighted-matching constraint only")
    fmt(sp, "text")
    sp.set_defaults(func=cmd_separate)

    e = sub.add_parser("ears", help="odd open-ear decomposition of a biconnected factor-critical graph")
    graph_inputs(e)
    fmt(e, "text")
    e.set_defaults(func=cmd_ears)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (TokenboundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
