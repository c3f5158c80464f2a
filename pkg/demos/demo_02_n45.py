"""
Reducing Z_45 x| Z_3 to smaller pieces
======================================

45 = 5 * 9. The twist 31 is 1 mod 5 and has order 3 mod 9, so the group splits
as Z_5 times a twisted group on Z_9. Subgroups split the same way, and the
solver works on each factor through a restricted oracle.
"""

import numpy as np

from semidirect_hsp import decompose, make_oracle, solve_general, validate_spec
from semidirect_hsp.group import Element, format_element
from semidirect_hsp.subgroups import ExplicitSet, closure, subgroup_lattice_bruteforce

G = validate_spec(45, 3, 31)
dec = decompose(G)
print(dec.to_dict())

# %%
# Every subgroup of G, solved from scratch.
rng = np.random.default_rng(7)
lattice = sorted(subgroup_lattice_bruteforce(G), key=len)
for H in lattice:
    result = solve_general(G, make_oracle(G, ExplicitSet(H)), k=8, rng=rng)
    gens = ", ".join(format_element(g) for g in result.generators) or "e"
    print(f"|H| = {len(H):3d}  <{gens}>  correct={result.elements(G) == H}  queries={result.queries}")

# %%
# The other nontrivial twist, 16, gives an isomorphic group.
G16 = validate_spec(45, 3, 16)
H = closure([Element(5, 1)], G16)
print("order", len(H), solve_general(G16, make_oracle(G16, ExplicitSet(H)), rng=rng).elements(G16) == H)
