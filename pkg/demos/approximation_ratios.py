"""
Product-state approximations and their certificates
===================================================

Simple states (a max-cut product state, singlets on a max matching, tilted
EPR pairs) reach a guaranteed fraction of the upper bounds built from W, M
and C. The worst case over normalised (c, m) gives the ratio constants.
"""

import numpy as np

from tokenbound.approx_algorithms import Variant, certified_ratio, epr_ratio_constant, worst_case_constants
from tokenbound.graph_core import cycle_graph, enumerate_nonisomorphic
from tokenbound.hamiltonians import Problem, extremal_energy
from tokenbound.relaxation_oracle import audit_constraint, separate

# %%
# worst-case constants
for p, v in [(Problem.QMC, Variant.EXACT), (Problem.QMC, Variant.EFFICIENT), (Problem.XY, Variant.EXACT),
             (Problem.XY, Variant.EFFICIENT), (Problem.XY, Variant.CUT_BOUND),
             (Problem.XY, Variant.CUT_BOUND_EFFICIENT)]:
    res = worst_case_constants(p, v)
    print(f"{p.value:4s}{v.value:22s}{res.ratio:.4f}  at c={res.c_star:.3f}, m={res.m_star:.3f}")
print("epr (1+sqrt 5)/4 =", epr_ratio_constant())

# %%
# one certificate in detail
cert = certified_ratio(cycle_graph(5), Problem.QMC, compute_true=True)
print(cert)

# %%
# on real graphs the ratio against the true optimum is far better than the constant
ratios = [certified_ratio(g, Problem.QMC, compute_true=True).true_ratio
          for g in enumerate_nonisomorphic(6) if g.m]
print("QMC, order 6: min true ratio %.3f, median %.3f" % (min(ratios), np.median(ratios)))

# %%
# the per-edge energies of the QMC ground state pass the separation oracle ...
g = cycle_graph(7)
x = extremal_energy(g, Problem.QMC, per_edge=True).per_edge
print("per-edge energies:", np.round(x, 3), "->", "feasible" if separate(g, x).feasible else "violated")

# ... while an inflated vector is cut off by a constraint valid for every matching
out = separate(g, np.full(g.m, 1.6))
print(out.constraint.kind.value, out.constraint.where, "audit:", audit_constraint(g, out))
