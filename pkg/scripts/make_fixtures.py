"""Regenerate the graph6 fixtures under tests/data.

Uses pynauty canonical labelling, independent of the package's own
canonical forms, so the fixtures double as an enumeration cross-check.

    python3 scripts/make_fixtures.py

Writes:
    order8.g6      all 12,346 graphs on 8 vertices
    fc9_sample.g6  biconnected factor-critical graphs on 9 vertices (seeded sample)
"""

from __future__ import annotations

import itertools
import pathlib

import numpy as np
import pynauty

from tokenbound.graph_core import WeightedGraph, classify, enumerate_nonisomorphic, write_graph6

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
FC9_COUNT = 400


def certificate(g: WeightedGraph) -> bytes:
    adj = {v: [] for v in range(g.n)}
    for u, v in g.edges:
        adj[u].append(v)
    return pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))


def order8() -> list[str]:
    seen = {}
    for base in enumerate_nonisomorphic(7):
        for r in range(8):
            for nbrs in itertools.combinations(range(7), r):
                g = WeightedGraph.from_edges(8, list(base.edges) + [(u, 7) for u in nbrs])
                seen.setdefault(certificate(g), g)
    return sorted(write_graph6(g) for g in seen.values())


def fc9_sample(seed: int = 2024) -> list[str]:
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(9), 2))
    seen = {}
    while len(seen) < FC9_COUNT:
        p = rng.uniform(0.25, 0.6)
        edges = [e for e in pairs if rng.random() < p]
        g = WeightedGraph.from_edges(9, edges)
        pred = classify(g)
        if pred.biconnected and pred.factor_critical:
            seen.setdefault(certificate(g), g)
    return sorted(write_graph6(g) for g in seen.values())


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    g8 = order8()
    (OUT / "order8.g6").write_text("\n".join(g8) + "\n")
    print(f"order8.g6: {len(g8)} graphs")
    fc = fc9_sample()
    (OUT / "fc9_sample.g6").write_text("\n".join(fc) + "\n")
    print(f"fc9_sample.g6: {len(fc)} graphs")


if __name__ == "__main__":
    main()
