"""
Two counterexample graphs
=========================

The registry holds two graphs that break natural-looking spectral
statements: monotonicity of the smallest adjacency eigenvalue of F_k(G)
in k, and a max-cut flavoured upper bound on the Laplacian of F_k(G).
"""

from tokenbound import conjectures as cj
from tokenbound.combinatorics import max_cut
from tokenbound.spectra import MatrixKind, extremal_eigs, token_matrix

d1, d2 = cj.counterexample_registry()

# %%
# D1: lambda_min(A(F_k)) is not monotone in k
for k in range(1, 5):
    lo = extremal_eigs(token_matrix(d1.graph, k, MatrixKind.ADJACENCY)).lambda_min
    print(f"D1 k={k}: lambda_min(A) = {lo:.4f}")

# %%
# D2: the Laplacian reaches past (W + C)/2 + k at k = 5 only
g = d2.graph
w, c = g.total_weight, max_cut(g).weight
print(f"D2: W = {w:g}, C = {c:g}")
for k in range(1, 6):
    top = extremal_eigs(token_matrix(g, k, MatrixKind.LAPLACIAN)).lambda_max
    print(f"  k={k}: lambda_max(L) = {top:.3f}  cut bound {(w + c) / 2 + k:g}  m + k = {g.m + k}")

# %%
# the batch runner flags both, and marks them as expected
rep = cj.batch_verify(cj.counterexample_registry(), cj.GROUPS["all"])
for r in rep.violations:
    print(r.graph_id, r.conjecture.value, "k =", r.k, "expected" if rep.is_expected(r) else "NEW")
