"""
Hidden subgroups of Z_18 x| Z_3
===============================

The smallest canonical group: N = 2 * 3^2 with the twist 7 = 1 + 2 * 3.
We list its subgroups, hide one of them, look at a single Fourier round and
then let the solver find it.
"""

import numpy as np

from semidirect_hsp import canonical_spec, make_oracle, solve_2pr
from semidirect_hsp.qsim import post_collapse_distribution
from semidirect_hsp.subgroups import TwoGen, enumerate_subgroups, format_subgroup, subgroup_elements

G = canonical_spec(3, 2)
print("group:", G.N, G.p, G.phi11, "order", G.order)

# every subgroup is cyclic inside <x>, two-generated, or contains y outright
for d in enumerate_subgroups(G):
    print(f"  {format_subgroup(d):10s} order {len(subgroup_elements(d, G))}")

# %%
# Hide <x^3, x y>. One round over the 3x3 grid x^(3^0 a) y^b lands on pairs
# (c, d) with c*h + d = 0 mod 3, each with probability 1/3.
H = TwoGen(0, 1, 1)
dist = post_collapse_distribution(G, 0, 1, H)
print(np.round(dist, 4))

# %%
# The solver: an abelian stage on <x>, then k rounds and the slope vote.
oracle = make_oracle(G, H)
result = solve_2pr(G, oracle, k=8, rng=np.random.default_rng(1))
print("found", format_subgroup(result.descriptor), "with", result.queries, "queries")
print("slopes seen:", [o.h_tilde for o in result.rounds])
